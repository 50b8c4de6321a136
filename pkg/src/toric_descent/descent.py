"""Twisted forms over small field models and their Brauer fingerprints.

Field models are finite quotients Gamma of an absolute Galois group:

* ``real``: Gamma = C2 acting as complex conjugation. Torus cohomology is
  computed with the classical identifications H^1(R, T) = H^-1(C2, X_*(T))
  and H^2(R, T) = H^0(C2, X_*(T)) (Tate cohomology of cocharacters).
* ``finite``: Gamma = C_m; all Brauer groups and H^1 of connected groups
  vanish, so forms are classified by Hom(Gamma, J) / conj.
* ``abstract``: Gamma given by generators, with a Brauer group (as invariant
  factors) for the fixed field of each subgroup.

Cocycles into a constant finite group are homomorphisms, so all
nonabelian H^1 computations reduce to homomorphisms up to conjugacy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Optional, Sequence

from .autgroup import ClassAutGroup, ToricWeylGroup
from .fan import DivisorTheory, Fan
from .glattice import (FiniteMatrixGroup, GLattice, GroupError, InvertibilityVerdict, Subgroup,
                       coflasque_resolution, conjugacy_representatives, is_flasque, hom_from_generators,
                       is_invertible, subgroups, tate_quotient)
from .omega import OmegaSet
from .zmodule import FGAbelianGroup, IntMatrix, Quotient, solve_linear


class DescentError(ValueError):
    pass


# ---------------------------------------------------------------------------
# field models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaloisModel:
    kind: str  # "real", "finite" or "abstract"
    gamma: FiniteMatrixGroup
    brauer: Optional[dict] = None  # abstract: subgroup position -> invariant factors

    @classmethod
    def real(cls) -> "GaloisModel":
        return cls("real", FiniteMatrixGroup.sign())

    @classmethod
    def finite(cls, m: int) -> "GaloisModel":
        if m < 1:
            raise DescentError("finite model needs m >= 1")
        return cls("finite", FiniteMatrixGroup.cyclic(m))

    @classmethod
    def abstract(cls, generators: Sequence, brauer: dict) -> "GaloisModel":
        gamma = FiniteMatrixGroup(generators)
        subs = subgroups(gamma)
        table = {}
        for k, v in brauer.items():
            k = int(k)
            if not 0 <= k < len(subs):
                raise DescentError(f"Brauer assignment for unknown subgroup {k}")
            table[k] = FGAbelianGroup(v)
        missing = [k for k in range(len(subs)) if k not in table]
        if missing:
            raise DescentError(f"Brauer groups missing for subgroups {missing}")
        return cls("abstract", gamma, table)

    def brauer_group(self, H: Subgroup) -> FGAbelianGroup:
        """Br of the fixed field of H."""
        if self.kind == "finite":
            return FGAbelianGroup(())
        if self.kind == "real":
            return FGAbelianGroup((2,)) if len(H) == 2 else FGAbelianGroup(())
        subs = subgroups(self.gamma)
        return self.brauer[[s.elements for s in subs].index(H.elements)]

    def describe(self) -> str:
        if self.kind == "real":
            return "real (Gamma = C2)"
        if self.kind == "finite":
            return f"finite (Gamma = C{len(self.gamma)})"
        return f"abstract (|Gamma| = {len(self.gamma)})"


def field_name(model: GaloisModel, stab: Subgroup) -> str:
    """Name of the fixed field of a stabilizer subgroup."""
    if model.kind == "real":
        return "R" if len(stab) == 2 else "C"
    deg = len(model.gamma) // len(stab)
    return "k" if deg == 1 else f"k{deg}"


# ---------------------------------------------------------------------------
# homomorphisms up to conjugacy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CocycleClass:
    """A homomorphism Gamma -> target (values on all Gamma elements), a conjugacy representative."""

    images: tuple[int, ...]
    key: tuple[int, ...]

    @property
    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)

    def is_trivial(self) -> bool:
        return all(i == 0 for i in self.images)


def _conj_key(gamma: FiniteMatrixGroup, target: FiniteMatrixGroup, imgs: Sequence[int]) -> tuple[int, ...]:
    """Minimal conjugate of a tuple of generator images."""
    return min(tuple(target.conj(t, x) for x in imgs) for t in range(len(target)))


def hom_classes(gamma: FiniteMatrixGroup, target: FiniteMatrixGroup) -> list[CocycleClass]:
    """Hom(gamma, target) / conjugacy, sorted by the minimal conjugate of the generator images."""
    seen: dict[tuple[int, ...], list[int]] = {}
    for imgs in product(range(len(target)), repeat=len(gamma.generators)):
        key = _conj_key(gamma, target, imgs)
        if key in seen or key != tuple(imgs):
            continue
        phi = hom_from_generators(gamma, imgs, target)
        if phi is not None:
            seen[key] = phi
    return [CocycleClass(tuple(seen[k]), k) for k in sorted(seen)]


def classify_hom(gamma: FiniteMatrixGroup, target: FiniteMatrixGroup, images: Sequence[int],
                 classes: Sequence[CocycleClass]) -> tuple[int, int]:
    """(position in classes, conjugating t) with t . images . t^-1 equal to the representative."""
    for t in range(len(target)):
        key = tuple(target.conj(t, images[g]) for g in gamma.generators)
        for k, c in enumerate(classes):
            if c.key == key:
                return k, t
    raise DescentError("homomorphism not found among the classes")


def centralizer(target: FiniteMatrixGroup, c: CocycleClass) -> frozenset[int]:
    """H^0 of the twisted constant group: elements commuting with the image of c."""
    return target.centralizer(sorted(c.image_set))


# ---------------------------------------------------------------------------
# twisted centres and canonical tori
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EtaleShape:
    """Orbits of Gamma on a finite set, each a field factor of degree the orbit length."""

    orbits: tuple[tuple[int, ...], ...]
    stabilizers: tuple[Subgroup, ...]
    fields: tuple[str, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)


def _gamma_orbits(model: GaloisModel, perms: Sequence[Sequence[int]], c: CocycleClass, n: int) -> EtaleShape:
    gamma = model.gamma
    seen: set[int] = set()
    orbits, stabs, names = [], [], []
    for x in range(n):
        if x in seen:
            continue
        orb = sorted({perms[c.images[g]][x] for g in range(len(gamma))})
        seen.update(orb)
        stab = gamma.subgroup([g for g in range(len(gamma)) if perms[c.images[g]][x] == x])
        orbits.append(tuple(orb))
        stabs.append(stab)
        names.append(field_name(model, stab))
    return EtaleShape(tuple(orbits), tuple(stabs), tuple(names))


def twisted_center(model: GaloisModel, c: CocycleClass, J: ClassAutGroup) -> EtaleShape:
    """Centre of the twisted Cox endomorphism algebra: Gamma-orbits on Lambda."""
    return _gamma_orbits(model, J.lambda_perms, c, len(J.weights.classes))


@dataclass(frozen=True)
class TorusShape:
    """E = prod F_i^{n_i}: per Lambda-orbit the field and the multiplicity."""

    factors: tuple[tuple[tuple[int, ...], str, int], ...]

    def render(self) -> str:
        parts = []
        for orb, fname, n in self.factors:
            parts.append(fname if n == 1 else f"{fname}^{n}")
        return "GL1(" + " x ".join(parts) + ")"


def canonical_torus_shape(model: GaloisModel, c: CocycleClass, J: ClassAutGroup) -> TorusShape:
    sh = twisted_center(model, c, J)
    mult = J.weights.multiplicities
    return TorusShape(tuple((o, f, mult[o[0]]) for o, f in zip(sh.orbits, sh.fields)))


# ---------------------------------------------------------------------------
# H^2(k, S -> J)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """An element of H^2(k, S -> J): a J-class index and a canonical element.

    ``element`` is the minimal representative (in group coordinates) of the
    orbit under the centralizer; ``vector`` is a representative cocharacter
    of S (a linear form on Cl) for the real model.
    """

    component: int
    element: tuple[int, ...]
    group: FGAbelianGroup
    vector: Optional[tuple[int, ...]] = None

    @property
    def neutral(self) -> bool:
        return not any(self.element)

    @property
    def key(self) -> tuple:
        return (self.component, self.element)


def period(fp: Fingerprint) -> int:
    """Order of the fingerprint in its component group."""
    k = fp.group.element_order(fp.element)
    if k is None:
        raise DescentError("component group is infinite")
    return k


@dataclass(frozen=True)
class H2Component:
    """One summand H^2(k, cS) / H^0(k, cJ) of the decomposition over J-classes."""

    index: int
    cocycle: CocycleClass
    group: FGAbelianGroup
    orbits: tuple[tuple[tuple[int, ...], ...], ...]  # centralizer orbits of group elements
    quotient: Optional[Quotient] = None  # real model: H^0(C2, cCl*) with lift
    orbit_data: Optional[EtaleShape] = None  # abstract model: Gamma-orbits on the basis of S-hat

    @property
    def size(self) -> int:
        return len(self.orbits)

    def canonical(self, element: Sequence[int]) -> tuple[int, ...]:
        e = self.group.reduce(element)
        for orb in self.orbits:
            if e in orb:
                return orb[0]
        raise DescentError("element not found in component")


def _orbits_under(group: FGAbelianGroup, maps: Sequence) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Orbits of a finite abelian group's element set under a list of maps."""
    elems = group.elements()
    seen: set = set()
    out = []
    for e in elems:
        if e in seen:
            continue
        orb = {e}
        frontier = [e]
        while frontier:
            x = frontier.pop()
            for f in maps:
                y = f(x)
                if y not in orb:
                    orb.add(y)
                    frontier.append(y)
        seen |= orb
        out.append(tuple(sorted(orb)))
    return tuple(sorted(out))


def _real_component(J: ClassAutGroup, gamma: FiniteMatrixGroup, c: CocycleClass, index: int) -> H2Component:
    dual = J.dual_pic_lattice()
    L = GLattice(gamma, dual.rank, tuple(dual.action[c.images[g]] for g in range(len(gamma))))
    q = tate_quotient(0, L)
    cent = sorted(centralizer(J.group, c))
    maps = [(lambda x, A=dual.action[z]: q.classify(A @ q.lift_element(x))) for z in cent]
    return H2Component(index, c, q.group, _orbits_under(q.group, maps), quotient=q)


def _abstract_component(model: GaloisModel, J: ClassAutGroup, c: CocycleClass, index: int) -> H2Component:
    pic = J.pic_lattice()
    perms = []
    for A in pic.action:
        p = []
        for j in range(pic.rank):
            col = A.col(j)
            p.append(next(i for i, x in enumerate(col) if x == 1))
        perms.append(p)
    sh = _gamma_orbits(model, perms, c, pic.rank)
    factors = [model.brauer_group(s) for s in sh.stabilizers]
    group = _product_group(factors)
    offsets = []
    off = 0
    for fct in factors:
        offsets.append(off)
        off += fct.ngens
    # centralizer elements permute orbits with equal stabilizers
    cent = sorted(centralizer(J.group, c))
    maps = []
    for z in cent:
        target = []
        for o in sh.orbits:
            img = perms[z][o[0]]
            target.append(next(k for k, o2 in enumerate(sh.orbits) if img in o2))

        def f(x, target=target):
            parts = [x[offsets[k]:offsets[k] + factors[k].ngens] for k in range(len(factors))]
            new = [None] * len(factors)
            for k, t in enumerate(target):
                new[t] = parts[k]
            return tuple(v for part in new for v in part)

        maps.append(f)
    return H2Component(index, c, group, _orbits_under(group, maps), orbit_data=sh)


def _product_group(factors: Sequence[FGAbelianGroup]) -> FGAbelianGroup:
    """Direct product with one coordinate block per factor."""
    return FGAbelianGroup.presented(d for fct in factors for d in fct.invariant_factors)


def h2_set(model: GaloisModel, J: ClassAutGroup) -> list[H2Component]:
    """H^2(k, S -> J) as components indexed by Hom(Gamma, J) / conj."""
    comps = []
    for k, c in enumerate(hom_classes(model.gamma, J.group)):
        if model.kind == "real":
            comps.append(_real_component(J, model.gamma, c, k))
        elif model.kind == "finite":
            triv = FGAbelianGroup(())
            comps.append(H2Component(k, c, triv, (((),),)))
        else:
            if not J.pic_lattice().is_permutation_basis():
                raise DescentError("S-hat is not a permutation lattice: represent via fingerprint_in_P")
            comps.append(_abstract_component(model, J, c, k))
    return comps


# ---------------------------------------------------------------------------
# the real model: N-classes, connecting map, varieties
# ---------------------------------------------------------------------------


def torus_label(L: GLattice) -> str:
    """Isomorphism type of a torus over R from its cocharacter C2-lattice.

    A Z[C2]-lattice is Z^a + Z_sign^b + Z[C2]^c with a = dim H^0 and
    b = dim H^-1 over F2.
    """
    a = len(tate_quotient(0, L).group.invariant_factors)
    b = len(tate_quotient(-1, L).group.invariant_factors)
    c = (L.rank - a - b) // 2
    parts = []
    for n, name in ((a, "Gm"), (b, "S1"), (c, "R(C/R)Gm")):
        if n:
            parts.append(name if n == 1 else f"{name}^{n}")
    return " x ".join(parts) if parts else "1"


@dataclass(frozen=True)
class NClass:
    """A class in H^1(k, T x| W): a W-cocycle class and an orbit in H^1(k, cT)."""

    w_class: int
    element: tuple[int, ...]
    torus: str
    fingerprint: Fingerprint
    variety: int = -1

    @property
    def from_w(self) -> bool:
        return not any(self.element)


@dataclass(frozen=True)
class Variety:
    fingerprint: Fingerprint
    n_classes: tuple[int, ...]
    component: int

    @property
    def neutral(self) -> bool:
        return self.fingerprint.neutral


@dataclass(frozen=True)
class FormsReport:
    model: GaloisModel
    w_classes: tuple[CocycleClass, ...]
    j_classes: tuple[CocycleClass, ...]
    w_to_j: tuple[int, ...]
    components: tuple[H2Component, ...]
    centers: tuple[EtaleShape, ...]
    tori: tuple[TorusShape, ...]
    n_classes: tuple[NClass, ...]
    varieties: tuple[Variety, ...]
    section_classes: tuple[int, ...]  # W-class of s(c) for each J-class c

    def torus_counts(self) -> list[int]:
        return [len(v.n_classes) for v in self.varieties]


class _Connecting:
    """delta: H^-1(C2, cN) -> H^0(C2, c'Cl*), transported to the J-class representative."""

    def __init__(self, W: ToricWeylGroup, J: ClassAutGroup, div: DivisorTheory):
        self.W, self.J, self.div = W, J, div
        self.R = div.ray_matrix  # rows u_rho: Z^rays -> N is R^T
        self.RT = self.R.T
        self.degT = div.deg.T

    def __call__(self, w: int, x: Sequence[int], h: int, comp: H2Component) -> tuple[tuple[int, ...], tuple[int, ...]]:
        sol = solve_linear(self.RT, x)
        if sol is None:  # pragma: no cover - R^T is onto N for complete fans
            raise ArithmeticError("cocharacter does not lift to Z^rays")
        y = sol.particular
        P = self.W.divisor_matrix(w)
        z = tuple(a + b for a, b in zip(y, P @ y))
        phi = solve_linear(self.degT, z)
        if phi is None:  # pragma: no cover - exactness of the dual sequence
            raise ArithmeticError("norm does not come from Cl*")
        A = self.J.dual_pic_lattice().action[h]
        v = A @ phi.particular
        return comp.quotient.classify(v), v


def _w_component_map(W: ToricWeylGroup, J: ClassAutGroup, gamma: FiniteMatrixGroup,
                     w_classes: Sequence[CocycleClass], j_classes: Sequence[CocycleClass]):
    out = []
    for c in w_classes:
        imgs = [J.quotient[c.images[g]] for g in range(len(gamma))]
        out.append(classify_hom(gamma, J.group, imgs, j_classes))
    return out


def classify_forms_real(f: Fan, div: DivisorTheory, W: ToricWeylGroup, J: ClassAutGroup) -> FormsReport:
    """Forms over R: N-classes with tori and fingerprints, grouped into varieties."""
    model = GaloisModel.real()
    gamma = model.gamma
    w_classes = hom_classes(gamma, W.group)
    j_classes = hom_classes(gamma, J.group)
    comps = [_real_component(J, gamma, c, k) for k, c in enumerate(j_classes)]
    wj = _w_component_map(W, J, gamma, w_classes, j_classes)
    delta = _Connecting(W, J, div)
    N = W.n_lattice()
    ncls: list[NClass] = []
    for wi, c in enumerate(w_classes):
        L = GLattice(gamma, N.rank, tuple(N.action[c.images[g]] for g in range(len(gamma))))
        q = tate_quotient(-1, L)
        cent = sorted(centralizer(W.group, c))
        maps = [(lambda x, A=N.action[z]: q.classify(A @ q.lift_element(x))) for z in cent]
        label = torus_label(L)
        comp_idx, h = wj[wi]
        comp = comps[comp_idx]
        for orb in _orbits_under(q.group, maps):
            x = orb[0]
            elem, vec = delta(c.images[1], q.lift_element(x), h, comp)
            fp = Fingerprint(comp_idx, comp.canonical(elem), comp.group, vec)
            ncls.append(NClass(wi, x, label, fp))
    # group by fingerprint
    keys = sorted({n.fingerprint.key for n in ncls})
    varieties = []
    final = []
    for n in ncls:
        final.append(NClass(n.w_class, n.element, n.torus, n.fingerprint, keys.index(n.fingerprint.key)))
    for k, key in enumerate(keys):
        members = tuple(i for i, n in enumerate(final) if n.variety == k)
        varieties.append(Variety(final[members[0]].fingerprint, members, key[0]))
    sec = []
    for jc in j_classes:
        imgs = [J.section[jc.images[g]] for g in range(len(gamma))]
        sec.append(classify_hom(gamma, W.group, imgs, w_classes)[0])
    centers = tuple(twisted_center(model, c, J) for c in j_classes)
    tori = tuple(canonical_torus_shape(model, c, J) for c in j_classes)
    return FormsReport(model, tuple(w_classes), tuple(j_classes), tuple(k for k, _ in wj), tuple(comps),
                       centers, tori, tuple(final), tuple(varieties), tuple(sec))


def classify_forms_finite(f: Fan, div: DivisorTheory, W: ToricWeylGroup, J: ClassAutGroup,
                          model: GaloisModel) -> FormsReport:
    """Forms over a finite-field model: varieties are Hom(Gamma, J) / conj, all neutral."""
    if model.kind != "finite":
        raise DescentError("classify_forms_finite needs a finite model")
    gamma = model.gamma
    w_classes = hom_classes(gamma, W.group)
    j_classes = hom_classes(gamma, J.group)
    triv = FGAbelianGroup(())
    comps = tuple(H2Component(k, c, triv, (((),),)) for k, c in enumerate(j_classes))
    wj = _w_component_map(W, J, gamma, w_classes, j_classes)
    ncls = []
    for wi, c in enumerate(w_classes):
        k = wj[wi][0]
        ncls.append(NClass(wi, (), "", Fingerprint(k, (), triv), k))
    varieties = tuple(Variety(Fingerprint(k, (), triv), tuple(i for i, n in enumerate(ncls) if n.variety == k), k)
                      for k in range(len(j_classes)))
    sec = []
    for jc in j_classes:
        imgs = [J.section[jc.images[g]] for g in range(len(gamma))]
        sec.append(classify_hom(gamma, W.group, imgs, w_classes)[0])
    centers = tuple(twisted_center(model, c, J) for c in j_classes)
    tori = tuple(canonical_torus_shape(model, c, J) for c in j_classes)
    return FormsReport(model, tuple(w_classes), tuple(j_classes), tuple(k for k, _ in wj), comps, centers,
                       tori, tuple(ncls), varieties, tuple(sec))


# ---------------------------------------------------------------------------
# the induced map to a permutation torus
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BrauerFingerprint:
    """Image in H^2(k, P -> J): per Gamma-orbit of omega, (field, class in Q/Z)."""

    component: int
    entries: tuple[tuple[tuple[int, ...], str, Fraction], ...]

    @property
    def neutral(self) -> bool:
        return all(v == 0 for _, _, v in self.entries)

    def multiset(self) -> tuple:
        return tuple(sorted((name, v) for _, name, v in self.entries))

    def render(self) -> str:
        def q(v):
            return "0" if v == 0 else f"{v.numerator}/{v.denominator}"
        return "{" + ", ".join(f"({name},{q(v)})" for _, name, v in self.entries) + "}"


def fingerprint_in_P(fp: Fingerprint, comp: H2Component, omega: OmegaSet, J: ClassAutGroup,
                     model: Optional[GaloisModel] = None) -> BrauerFingerprint:
    """Apply the map on H^0 induced by the cocharacter map dual to Z^omega -> Pic."""
    if model is None:
        model = GaloisModel.real()
    if comp.quotient is None:
        raise DescentError("fingerprint_in_P needs the real-model representation")
    phi = comp.quotient.lift_element(fp.element)
    y = [sum(a * b for a, b in zip(cls, phi)) for cls in omega.classes]
    sh = _gamma_orbits(model, omega.perms, comp.cocycle, len(omega.classes))
    entries = []
    for orb, stab, name in zip(sh.orbits, sh.stabilizers, sh.fields):
        n = len(stab)
        entries.append((orb, name, Fraction(y[orb[0]] % n, n)))
    return BrauerFingerprint(comp.index, tuple(entries))


def p_component_elements(comp: H2Component, omega: OmegaSet, J: ClassAutGroup,
                         model: Optional[GaloisModel] = None) -> dict[tuple[int, ...], BrauerFingerprint]:
    """fingerprint_in_P on every element of a real-model component group."""
    out = {}
    for e in comp.group.elements():
        fp = Fingerprint(comp.index, e, comp.group)
        out[e] = fingerprint_in_P(fp, comp, omega, J, model)
    return out


@dataclass(frozen=True)
class InjectivityCheck:
    component: int
    group_injective: bool
    orbit_injective: bool
    kernel: tuple[tuple[int, ...], ...]


def _omega_vector(b: BrauerFingerprint, n: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * n
    for orb, _, v in b.entries:
        for i in orb:
            out[i] = v
    return tuple(out)


def check_fingerprint_injectivity(comps: Sequence[H2Component], omega: OmegaSet,
                                  J: ClassAutGroup) -> list[InjectivityCheck]:
    """Exhaustive injectivity of fingerprint_in_P on each real-model component.

    Orbits are compared through the per-class vector in (Q/Z)^omega taken
    up to the permutations of omega by the centralizer of the cocycle.
    """
    out = []
    n = len(omega.classes)
    for comp in comps:
        images = p_component_elements(comp, omega, J)
        kernel = tuple(e for e, b in images.items() if b.neutral and any(e))
        vecs = {e: _omega_vector(b, n) for e, b in images.items()}
        cent = sorted(centralizer(J.group, comp.cocycle))

        def canon(v):
            best = None
            for z in cent:
                p = omega.perms[z]
                w = [None] * n
                for i in range(n):
                    w[p[i]] = v[i]
                w = tuple(w)
                best = w if best is None or w < best else best
            return best

        keys = [canon(vecs[orb[0]]) for orb in comp.orbits]
        orbit_ok = len(set(keys)) == len(keys)
        out.append(InjectivityCheck(comp.index, len(set(vecs.values())) == len(vecs), orbit_ok, kernel))
    return out


# ---------------------------------------------------------------------------
# non-injectivity witness over a generic field
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelWitness:
    """Certificate that m_* has a nontrivial kernel element over some field.

    For 0 -> Q -> P -> S -> 0 with Q coflasque the kernel of the component
    map at a cocycle c is H^1(K, cQ). Over the fixed field K of a generic
    Galois extension with group H (component: the inclusion H -> J) the
    class of the versal cQ-torsor is nontrivial exactly when Q restricted to
    H is not invertible; ``q_verdict`` certifies this.
    """

    subgroup: Subgroup
    resolution_ranks: tuple[int, int, int]
    q_verdict: InvertibilityVerdict
    s_verdict: InvertibilityVerdict

    def render(self) -> str:
        q, p, s = self.resolution_ranks
        return (f"component: inclusion of a subgroup of order {len(self.subgroup)} into J; "
                f"kernel element: versal torsor of the coflasque torus Q (rank {q}, P rank {p}); "
                f"not invertible on that subgroup ({self.q_verdict.reason})")


def kernel_witness(S: GLattice) -> Optional[KernelWitness]:
    """Witness of non-injectivity for the coflasque resolution of S, or None when injective.

    When S is flasque, Q is invertible exactly when S is (both are then
    flasque and coflasque and [S] + [Q] is a permutation class), so the
    cheaper test on S is used to locate the subgroup.
    """
    res = coflasque_resolution(S)
    s_verdict = is_invertible(S)
    target = S if is_flasque(S) else res.Q
    if is_invertible(target).proven:
        return None
    for H in sorted(conjugacy_representatives(S.group), key=Subgroup.key):
        TH, _ = target.restrict(H)
        v = is_invertible(TH)
        if not v.proven:
            return KernelWitness(H, (res.Q.rank, res.P.rank, S.rank), v, s_verdict)
    raise ArithmeticError("lattice is not invertible but every restriction is")  # pragma: no cover
