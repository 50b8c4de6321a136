"""Toric Weyl group W, the class automorphism group J and the splitting J -> W."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial, prod
from typing import Optional, Sequence

from .fan import DivisorTheory, Fan, FanError, class_group
from .glattice import FiniteMatrixGroup, GLattice
from .zmodule import IntMatrix, rank, rational_inverse


@dataclass(frozen=True)
class WeightDecomposition:
    """Rays grouped by their class in Cl.

    ``classes`` lists the distinct classes in order of first occurrence;
    ``assignment[rho]`` is the index of the class of ray rho.
    """

    classes: tuple[tuple[int, ...], ...]
    assignment: tuple[int, ...]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(self.assignment.count(k) for k in range(len(self.classes)))

    def rays_of(self, k: int) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.assignment) if a == k)

    def index(self, cls: Sequence[int]) -> int:
        return self.classes.index(tuple(cls))


def weight_decomposition(div: DivisorTheory) -> WeightDecomposition:
    classes: list[tuple[int, ...]] = []
    assignment = []
    for c in div.ray_classes():
        if c not in classes:
            classes.append(c)
        assignment.append(classes.index(c))
    return WeightDecomposition(tuple(classes), tuple(assignment))


@dataclass(frozen=True)
class CoxAlgebraShape:
    """Split shape of the Cox endomorphism algebra: one M_n factor per weight."""

    factors: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.factors)

    @property
    def weyl_shape(self) -> tuple[int, ...]:
        """W° is isomorphic to the product of S_n over these n."""
        return self.sizes

    @property
    def weyl_order(self) -> int:
        return prod(factorial(n) for n in self.sizes)


def cox_algebra_shape(wd: WeightDecomposition) -> CoxAlgebraShape:
    return CoxAlgebraShape(tuple(zip(wd.classes, wd.multiplicities)))


@dataclass(frozen=True)
class FanSymmetry:
    g: IntMatrix
    pi: tuple[int, ...]


@dataclass(frozen=True)
class ToricWeylGroup:
    """W as a matrix group on N together with the induced ray permutations."""

    fan: Fan
    group: FiniteMatrixGroup
    perms: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.group)

    def __len__(self):
        return len(self.group)

    def symmetry(self, i: int) -> FanSymmetry:
        return FanSymmetry(self.group.elements[i], self.perms[i])

    def divisor_matrix(self, i: int) -> IntMatrix:
        """Action on Z^rays: e_rho -> e_pi(rho)."""
        return IntMatrix.permutation(self.perms[i])

    def n_lattice(self) -> GLattice:
        return GLattice(self.group, self.fan.rank, self.group.elements)

    def m_lattice(self) -> GLattice:
        return self.n_lattice().dual()

    def divisor_lattice(self) -> GLattice:
        return GLattice(self.group, self.fan.nrays, tuple(self.divisor_matrix(i) for i in range(len(self))))


def _cone_incidence(f: Fan) -> list[int]:
    return [sum(1 for c in f.max_cones if i in c) for i in range(f.nrays)]


def _basis_subset(f: Fan) -> tuple[int, ...]:
    """A lexicographically first set of n linearly independent rays, preferring a cone."""
    for c in f.max_cones:
        if len(c) >= f.rank:
            for sub in _subsets(c, f.rank):
                if rank(IntMatrix.from_rows([f.rays[i] for i in sub], cols=f.rank)) == f.rank:
                    return sub
    for sub in _subsets(range(f.nrays), f.rank):
        if rank(IntMatrix.from_rows([f.rays[i] for i in sub], cols=f.rank)) == f.rank:
            return sub
    raise FanError("rays do not span N")


def _subsets(items, k):
    from itertools import combinations
    return combinations(tuple(items), k)


def fan_automorphisms(f: Fan, div: Optional[DivisorTheory] = None) -> ToricWeylGroup:
    """All unimodular maps of N permuting the rays and the max cones.

    The images of a fixed spanning set of rays are enumerated (pruned by
    cone incidence); each candidate determines g, which is then checked to
    be integral, unimodular, ray-permuting, cone-preserving and compatible
    with the weight classes.
    """
    if div is None:
        div = class_group(f)
    wd = weight_decomposition(div)
    n = f.rank
    B = _basis_subset(f)
    Binv = rational_inverse(IntMatrix.from_columns([f.rays[i] for i in B], rows=n))
    inc = _cone_incidence(f)
    ray_index = {r: i for i, r in enumerate(f.rays)}
    cones = set(f.max_cones)
    found: dict[tuple, tuple[int, ...]] = {}
    cands = [[j for j in range(f.nrays) if inc[j] == inc[i]] for i in B]
    for images in _tuples(cands):
        T = [f.rays[j] for j in images]
        # g = T_cols @ B^{-1}
        g = []
        ok = True
        for r in range(n):
            row = []
            for c in range(n):
                x = sum(Fraction(T[k][r]) * Binv[k][c] for k in range(n))
                if x.denominator != 1:
                    ok = False
                    break
                row.append(int(x))
            if not ok:
                break
            g.append(row)
        if not ok:
            continue
        G = IntMatrix.from_rows(g, cols=n)
        if abs(G.det()) != 1:
            continue
        pi = []
        for u in f.rays:
            j = ray_index.get(G @ u)
            if j is None:
                break
            pi.append(j)
        if len(pi) != f.nrays or len(set(pi)) != f.nrays:
            continue
        if any(tuple(sorted(pi[i] for i in c)) not in cones for c in f.max_cones):
            continue
        # weight classes must be permuted as blocks
        block = {}
        if any(block.setdefault(wd.assignment[i], wd.assignment[pi[i]]) != wd.assignment[pi[i]]
               for i in range(f.nrays)):
            continue
        found[G.entries] = tuple(pi)
    mats = [IntMatrix(n, n, e) for e in found]
    group = FiniteMatrixGroup(mats, degree=n, bound=max(64, len(mats)))
    if len(group) != len(mats):  # pragma: no cover - the set is closed by construction
        raise ArithmeticError("fan symmetries are not closed under composition")
    perms = tuple(found[e.entries] for e in group.elements)
    return ToricWeylGroup(f, group, perms)


def _tuples(cands):
    """Injective choices, one element from each candidate list."""
    def rec(k, used):
        if k == len(cands):
            yield ()
            return
        for j in cands[k]:
            if j not in used:
                for rest in rec(k + 1, used | {j}):
                    yield (j,) + rest
    return rec(0, frozenset())


@dataclass(frozen=True)
class ClassAutGroup:
    """J = image of W in Aut(Cl), the quotient map, W° and a splitting section.

    ``quotient[w]`` is the J-index of W-element w and ``section[j]`` is the
    W-index chosen for j. ``lambda_perms[j]`` is the induced permutation of
    the weight classes.
    """

    W: ToricWeylGroup
    div: DivisorTheory
    weights: WeightDecomposition
    group: FiniteMatrixGroup
    quotient: tuple[int, ...]
    section: tuple[int, ...]
    lambda_perms: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.group)

    @property
    def kernel(self) -> tuple[int, ...]:
        """W° as W-indices."""
        return tuple(w for w, j in enumerate(self.quotient) if j == 0)

    def pic_lattice(self) -> GLattice:
        """Cl (= Pic for smooth complete fans) as a J-lattice."""
        return GLattice(self.group, self.group.degree, self.group.elements)

    def dual_pic_lattice(self) -> GLattice:
        return self.pic_lattice().dual()

    def lambda_lattice(self) -> GLattice:
        """The permutation lattice Z^Lambda."""
        return GLattice(self.group, len(self.weights.classes),
                        tuple(IntMatrix.permutation(p) for p in self.lambda_perms))


def class_action(W: ToricWeylGroup, div: DivisorTheory, w: int) -> IntMatrix:
    """The automorphism of Cl induced by W-element w."""
    P = W.divisor_matrix(w)
    k = div.cl_group.ngens
    cols = [div.classify(P @ div.lift_class([int(i == j) for j in range(k)])) for i in range(k)]
    return IntMatrix.from_columns(cols, rows=k)


def class_aut_group(W: ToricWeylGroup, div: DivisorTheory) -> ClassAutGroup:
    if not div.cl_group.is_free():
        raise FanError("class automorphism group needs a free class group")
    k = div.cl_group.ngens
    acts = [class_action(W, div, w) for w in range(len(W))]
    J = FiniteMatrixGroup(acts, degree=k) if k else FiniteMatrixGroup.trivial(1)
    quotient = tuple(J.index(A) for A in acts) if k else (0,) * len(W)
    wd = weight_decomposition(div)
    lam_perms = []
    for j in range(len(J)):
        w = quotient.index(j)
        pi = W.perms[w]
        perm = [0] * len(wd.classes)
        for lam in range(len(wd.classes)):
            perm[lam] = wd.assignment[pi[wd.rays_of(lam)[0]]]
        lam_perms.append(tuple(perm))
    section = splitting_section(W, J, quotient, wd)
    return ClassAutGroup(W, div, wd, J, quotient, section, tuple(lam_perms))


def splitting_section(W: ToricWeylGroup, J: FiniteMatrixGroup, quotient: Sequence[int],
                      wd: WeightDecomposition) -> tuple[int, ...]:
    """The homomorphic section J -> W.

    For each j the chosen preimage maps the rays of every weight class to the
    rays of the image class preserving the ray-index order.
    """
    out = []
    for j in range(len(J)):
        chosen = None
        for w in range(len(W)):
            if quotient[w] != j:
                continue
            pi = W.perms[w]
            if all(_increasing([pi[i] for i in wd.rays_of(lam)]) for lam in range(len(wd.classes))):
                chosen = w
                break
        if chosen is None:
            raise ArithmeticError(f"no order-preserving lift of J-element {j}")
        out.append(chosen)
    t, s = J.table, W.group.table
    for a in range(len(J)):
        for b in range(len(J)):
            if out[t[a][b]] != s[out[a]][out[b]]:
                raise ArithmeticError("section is not a homomorphism")
    return tuple(out)


def _increasing(xs: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(xs, xs[1:]))
