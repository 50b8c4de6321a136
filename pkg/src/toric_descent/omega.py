"""J-stable sets of globally generated classes and the shapes they induce.

A set omega of nef classes stable under J gives a map X -> Y to a product of
projective spaces (one factor P^{h0-1} per class) and a separable algebra
whose split shape is one matrix algebra M_{h0} per J-orbit, over an etale
algebra of degree the orbit length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .autgroup import ClassAutGroup
from .fan import DivisorTheory, Fan
from .glattice import (GLattice, InvertibilityVerdict, Subgroup, is_coflasque, is_invertible,
                       subgroups)
from .polyhedral import NefData, RationalCone, h0_of_class, hilbert_basis
from .zmodule import IntMatrix, cokernel, hnf_rows, kernel_basis, left_inverse, span_contains

Vector = tuple[int, ...]


class OmegaError(ValueError):
    pass


@dataclass(frozen=True)
class OmegaSet:
    """Classes in Cl coordinates (sorted), their h0 and the J-permutations.

    ``perms[j][i]`` is the position of J-element j applied to class i; it is
    None when the set is not J-stable.
    """

    classes: tuple[Vector, ...]
    h0: tuple[int, ...]
    perms: Optional[tuple[tuple[int, ...], ...]]

    def __len__(self):
        return len(self.classes)

    def orbits(self) -> list[tuple[int, ...]]:
        if self.perms is None:
            raise OmegaError("omega is not J-stable")
        seen: set[int] = set()
        out = []
        for i in range(len(self.classes)):
            if i in seen:
                continue
            orb = tuple(sorted({p[i] for p in self.perms}))
            seen.update(orb)
            out.append(orb)
        return out

    def matrix(self) -> IntMatrix:
        """The map Z^omega -> Pic sending basis vectors to their classes."""
        return IntMatrix.from_columns(self.classes)

    def lattice(self, J: ClassAutGroup) -> GLattice:
        """Z^omega as a permutation J-lattice."""
        if self.perms is None:
            raise OmegaError("omega is not J-stable")
        return GLattice(J.group, len(self.classes), tuple(IntMatrix.permutation(p) for p in self.perms))


def _perms(classes: Sequence[Vector], J: ClassAutGroup) -> Optional[tuple[tuple[int, ...], ...]]:
    pos = {c: i for i, c in enumerate(classes)}
    out = []
    for A in J.group.elements:
        p = []
        for c in classes:
            img = A @ c
            if img not in pos:
                return None
            p.append(pos[img])
        out.append(tuple(p))
    return tuple(out)


def make_omega(classes: Sequence[Sequence[int]], f: Fan, div: DivisorTheory, J: ClassAutGroup) -> OmegaSet:
    cl = tuple(sorted({tuple(int(x) for x in c) for c in classes}))
    if len(cl) != len(classes):
        raise OmegaError("omega classes must be distinct")
    if any(len(c) != div.cl_group.ngens for c in cl):
        raise OmegaError("omega class has the wrong length")
    return OmegaSet(cl, tuple(h0_of_class(f, div, c) for c in cl), _perms(cl, J))


def fixed_nef_cone(nef: NefData, J: ClassAutGroup, H: Subgroup):
    """(cone in Pic^H coordinates, basis of Pic^H as columns)."""
    L = J.pic_lattice()
    basis = L.fixed_basis(H)
    B = IntMatrix.from_columns(basis, rows=L.rank)
    ineqs = [tuple(sum(a[r] * B[r, c] for r in range(L.rank)) for c in range(B.cols))
             for a in nef.inequalities]
    return RationalCone.from_inequalities(ineqs, ambient=B.cols), B


def canonical_omega(f: Fan, div: DivisorTheory, J: ClassAutGroup, nef: NefData) -> OmegaSet:
    """Union over all subgroups G of J of the Hilbert bases of Nef cap Pic^G."""
    found: set[Vector] = set()
    for H in subgroups(J.group):
        cone, B = fixed_nef_cone(nef, J, H)
        for v in hilbert_basis(cone):
            found.add(B @ v)
    omega = make_omega(sorted(found), f, div, J)
    if omega.perms is None:  # pragma: no cover - j(C_G) = C_{j(G)}
        raise ArithmeticError("canonical omega is not J-stable")
    return omega


@dataclass(frozen=True)
class OmegaValidation:
    j_stable: bool
    all_globally_generated: bool
    faithful: bool
    generates_pic: bool
    kernel: Optional[GLattice]
    kernel_inclusion: Optional[IntMatrix]
    kernel_coflasque: bool
    fixed_surjective: tuple[tuple[Subgroup, bool], ...]
    warnings: tuple[str, ...] = ()

    @property
    def passes(self) -> bool:
        return (self.j_stable and self.all_globally_generated and self.faithful and self.kernel_coflasque
                and self.generates_pic and all(ok for _, ok in self.fixed_surjective))


def validate_omega(omega: OmegaSet, f: Fan, div: DivisorTheory, J: ClassAutGroup,
                   nef: NefData) -> OmegaValidation:
    warnings = []
    gg = all(nef.contains(c) for c in omega.classes)
    stable = omega.perms is not None
    m = omega.matrix()
    generates = cokernel(m).group.is_trivial()
    if not stable:
        return OmegaValidation(False, gg, False, generates, None, None, False, (), ("omega is not J-stable",))
    ident = tuple(range(len(omega)))
    faithful = all(p != ident for p in omega.perms[1:])
    if not faithful:
        warnings.append("a nontrivial element of J fixes omega pointwise")
    P = omega.lattice(J)
    kb = kernel_basis(m)
    inc = IntMatrix.from_columns(kb, rows=len(omega)) if kb else IntMatrix.zeros(len(omega), 0)
    if kb:
        left = left_inverse(inc)
        acts = tuple(left @ A @ inc for A in P.action)
    else:
        acts = tuple(IntMatrix.zeros(0, 0) for _ in P.action)
    Q = GLattice(J.group, len(kb), acts)
    cof = bool(is_coflasque(Q))
    pic = J.pic_lattice()
    surj = []
    for H in subgroups(J.group):
        image = [m @ v for v in P.fixed_basis(H)]
        basis = hnf_rows(image, pic.rank)
        surj.append((H, all(span_contains(basis, v) for v in pic.fixed_basis(H))))
    return OmegaValidation(True, gg, faithful, generates, Q, inc, cof, tuple(surj), tuple(warnings))


@dataclass(frozen=True)
class TargetShape:
    """Y = prod P^{dims[i]}, one factor per omega class, grouped in J-orbits."""

    dims: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]

    def render(self) -> str:
        from collections import Counter
        cnt = Counter(self.dims)
        parts = []
        for d in sorted(cnt, reverse=True):
            k = cnt[d]
            base = f"P{d}"
            parts.append(base if k == 1 else f"({base})^{k}")
        return " x ".join(parts) if parts else "point"


@dataclass(frozen=True)
class SeparableAlgebraShape:
    """One factor per J-orbit: (matrix degree, degree of the etale centre)."""

    factors: tuple[tuple[int, int], ...]

    def render(self) -> str:
        parts = []
        for deg, et in self.factors:
            parts.append(f"M{deg} over etale-{et}")
        return " x ".join(parts)

    def sorted_factors(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.factors, reverse=True))


def target_shape(omega: OmegaSet) -> tuple[TargetShape, SeparableAlgebraShape]:
    orbits = omega.orbits()
    dims = tuple(h - 1 for h in omega.h0)
    algebra = tuple((omega.h0[o[0]], len(o)) for o in orbits)
    return TargetShape(dims, tuple(orbits)), SeparableAlgebraShape(algebra)


@dataclass(frozen=True)
class InjectivityReport:
    verdict: InvertibilityVerdict
    text: str

    @property
    def injective(self) -> bool:
        return self.verdict.proven


def injectivity_verdict(J: ClassAutGroup) -> InjectivityReport:
    """Decide whether the Brauer fingerprint separates all forms, via invertibility of Pic."""
    v = is_invertible(J.pic_lattice())
    if v.proven:
        text = ("Pic is an invertible J-lattice: the Brauer fingerprint distinguishes all forms, "
                "and the map induced by a canonical omega is injective.")
    else:
        text = ("Pic is not an invertible J-lattice (" + v.reason + "): the fingerprint map is not "
                "injective over some extension, and some neutral form is not retract rational.")
    return InjectivityReport(v, text)
