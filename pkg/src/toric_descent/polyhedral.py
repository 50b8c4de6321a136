"""Rational polyhedral cones, Hilbert bases, nef cones and lattice point counts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import ceil, floor
from typing import Optional, Sequence

from .fan import DivisorTheory, Fan, FanError, TDivisor, class_group, is_projective, is_smooth
from .rational_lp import solve_lp
from .zmodule import (IntMatrix, cokernel, hnf, kernel_basis, primitive, rank, rational_inverse)


class ConeError(ValueError):
    pass


Vector = tuple[int, ...]


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _canon(vectors) -> tuple[Vector, ...]:
    return tuple(sorted({primitive(tuple(v)) for v in vectors if any(v)}))


def facets_from_generators(gens: Sequence[Sequence[int]], d: int) -> tuple[Vector, ...]:
    """Inner facet normals of a full-dimensional cone given by generators."""
    gens = [tuple(g) for g in gens]
    if d == 1:
        signs = {1 if g[0] > 0 else -1 for g in gens}
        return () if len(signs) == 2 else ((signs.pop(),),)
    out = set()
    for sub in combinations(gens, d - 1):
        ker = kernel_basis(IntMatrix.from_rows(sub, cols=d))
        if len(ker) != 1:
            continue
        w = ker[0]
        vals = [_dot(w, g) for g in gens]
        if all(v >= 0 for v in vals):
            out.add(primitive(w))
        elif all(v <= 0 for v in vals):
            out.add(primitive(tuple(-x for x in w)))
    return tuple(sorted(out))


def rays_from_inequalities(ineqs: Sequence[Sequence[int]], d: int) -> tuple[Vector, ...]:
    """Extreme rays of a pointed cone {x : <a, x> >= 0 for a in ineqs}."""
    ineqs = [tuple(a) for a in ineqs]
    if d == 1:
        out = [(s,) for s in (1, -1) if all(a[0] * s >= 0 for a in ineqs)]
        if len(out) == 2:
            raise ConeError("cone is not strongly convex")
        return tuple(out)
    if ineqs and rank(IntMatrix.from_rows(ineqs, cols=d)) < d:
        raise ConeError("cone is not strongly convex")
    if not ineqs:
        raise ConeError("cone is not strongly convex")
    out = set()
    for sub in combinations(ineqs, d - 1):
        ker = kernel_basis(IntMatrix.from_rows(sub, cols=d))
        if len(ker) != 1:
            continue
        r = ker[0]
        vals = [_dot(a, r) for a in ineqs]
        if all(v >= 0 for v in vals):
            out.add(primitive(r))
        elif all(v <= 0 for v in vals):
            out.add(primitive(tuple(-x for x in r)))
    return tuple(sorted(out))


def _in_cone_lp(v, gens) -> bool:
    if not gens:
        return not any(v)
    k, n = len(gens), len(v)
    res = solve_lp([0] * k, A_eq=[[g[i] for g in gens] for i in range(n)], b_eq=list(v),
                   nonneg=[True] * k)
    return res.status == "optimal"


@dataclass(frozen=True)
class RationalCone:
    """A cone in Z^ambient given by generators or by inequalities <a, x> >= 0.

    Generator cones may be lower dimensional; their span is handled through a
    basis of the saturated sublattice it cuts out. Inequality cones must be
    pointed.
    """

    ambient: int
    generators: Optional[tuple[Vector, ...]] = None
    inequalities: Optional[tuple[Vector, ...]] = None

    @classmethod
    def from_generators(cls, gens, ambient: Optional[int] = None) -> "RationalCone":
        gens = tuple(tuple(int(x) for x in g) for g in gens)
        if ambient is None:
            ambient = len(gens[0])
        return cls(ambient, generators=gens)

    @classmethod
    def from_inequalities(cls, ineqs, ambient: Optional[int] = None) -> "RationalCone":
        ineqs = tuple(tuple(int(x) for x in a) for a in ineqs)
        if ambient is None:
            ambient = len(ineqs[0])
        return cls(ambient, inequalities=ineqs)

    @cached_property
    def rays(self) -> tuple[Vector, ...]:
        return extreme_rays(self)

    @cached_property
    def span_basis(self) -> tuple[Vector, ...]:
        """Basis of the saturated lattice span(cone) cap Z^ambient."""
        if self.generators is None:
            return tuple(tuple(int(i == j) for j in range(self.ambient)) for i in range(self.ambient))
        gens = [g for g in self.generators if any(g)]
        if not gens:
            return ()
        ann = kernel_basis(IntMatrix.from_rows(gens, cols=self.ambient))
        if not ann:
            return tuple(tuple(int(i == j) for j in range(self.ambient)) for i in range(self.ambient))
        return kernel_basis(IntMatrix.from_rows(ann, cols=self.ambient))

    @property
    def dim(self) -> int:
        return len(self.span_basis)

    def _coords(self):
        """(to-coordinates, from-coordinates) for the span lattice."""
        B = IntMatrix.from_columns(self.span_basis, rows=self.ambient)
        from .zmodule import left_inverse
        return left_inverse(B), B

    @cached_property
    def facets(self) -> tuple[Vector, ...]:
        """Inner normals; in span coordinates when the cone is not full dimensional."""
        if self.inequalities is not None:
            return facets_from_generators(self.rays, self.ambient)
        L, _ = self._coords()
        return facets_from_generators([L @ g for g in self.generators if any(g)], self.dim)

    def contains(self, v: Sequence[int]) -> bool:
        if self.inequalities is not None:
            return all(_dot(a, v) >= 0 for a in self.inequalities)
        L, B = self._coords()
        c = L @ tuple(v)
        if B @ c != tuple(v):
            return False
        return all(_dot(a, c) >= 0 for a in self.facets)

    def is_strongly_convex(self) -> bool:
        if self.inequalities is not None:
            try:
                rays_from_inequalities(self.inequalities, self.ambient)
            except ConeError:
                return False
            return True
        gens = [g for g in self.generators if any(g)]
        if not gens:
            return True
        res = solve_lp([0] * self.ambient, A_ub=[[-x for x in g] for g in gens], b_ub=[-1] * len(gens))
        return res.status == "optimal"


def extreme_rays(c: RationalCone) -> tuple[Vector, ...]:
    """Minimal primitive generators, sorted lexicographically."""
    if c.inequalities is not None:
        return rays_from_inequalities(c.inequalities, c.ambient)
    gens = list(_canon(c.generators))
    out = []
    for i, g in enumerate(gens):
        others = gens[:i] + gens[i + 1:]
        if not _in_cone_lp(g, others):
            out.append(g)
    return tuple(out)


def _parallelepiped_points(A: IntMatrix) -> list[Vector]:
    """Lattice points sum lambda_i a_i with 0 <= lambda_i < 1 (columns a_i)."""
    d = A.rows
    q = cokernel(A)
    Ainv = rational_inverse(A)
    pts = []
    for e in q.group.elements():
        x = q.lift_element(e)
        lam = [sum(Ainv[i][j] * x[j] for j in range(d)) for i in range(d)]
        frac = [l - floor(l) for l in lam]
        y = tuple(sum(A[r, i] * frac[i] for i in range(d)) for r in range(d))
        pts.append(tuple(int(v) for v in y))
    return pts


def hilbert_basis(c: RationalCone) -> tuple[Vector, ...]:
    """Minimal generating set of the monoid c cap Z^ambient, sorted.

    Candidates are the extreme rays and the lattice points of the fundamental
    parallelepipeds of all simplicial cones spanned by linearly independent
    ray subsets (these cover c). A candidate is dropped when subtracting
    another candidate stays inside c.
    """
    if not c.is_strongly_convex():
        raise ConeError("cone is not strongly convex")
    rays = c.rays
    if c.generators is not None:
        L, B = c._coords()
        d = c.dim
        local = [L @ r for r in rays]
    else:
        d = c.ambient
        local = list(rays)
        B = None
    if d == 0:
        return ()
    facets = facets_from_generators(local, d)

    def inside(v):
        return all(_dot(a, v) >= 0 for a in facets)

    cands = set(local)
    for sub in combinations(local, d):
        A = IntMatrix.from_columns(sub, rows=d)
        if A.det() == 0:
            continue
        cands.update(p for p in _parallelepiped_points(A) if any(p))
    cands = sorted(cands)
    basis = []
    for x in cands:
        if not any(y != x and inside(tuple(a - b for a, b in zip(x, y))) for y in cands):
            basis.append(x)
    if B is not None:
        basis = [B @ v for v in basis]
    return tuple(sorted(basis))


# ---------------------------------------------------------------------------
# nef cone and lattice points
# ---------------------------------------------------------------------------


def _require_smooth_projective(f: Fan):
    if not is_smooth(f):
        raise FanError("fan is not smooth")
    if not is_projective(f):
        raise FanError("fan is not projective")


def support_inequalities(f: Fan) -> list[tuple[int, ...]]:
    """Linear forms on Z^rays whose nonnegativity is nefness (smooth fans).

    For a max cone sigma and a ray rho outside it the form is
    a -> a_rho + <m_sigma, u_rho> with m_sigma = -U_sigma^{-1} a_sigma.
    """
    out = []
    for c in f.max_cones:
        U = IntMatrix.from_rows([f.rays[i] for i in c], cols=f.rank)
        Uinv = U.inverse()  # rows u_i; m solves U m = -a_sigma
        cs = set(c)
        for rho, u in enumerate(f.rays):
            if rho in cs:
                continue
            w = [0] * f.nrays
            w[rho] += 1
            # <m, u> = -u^T U^{-1} a_sigma
            coeff = [sum(u[k] * Uinv[k, j] for k in range(f.rank)) for j in range(len(c))]
            for j, i in enumerate(c):
                w[i] -= coeff[j]
            out.append(tuple(w))
    return out


def _section_from_hnf(div: DivisorTheory) -> IntMatrix:
    """Section of deg supported on the HNF pivot columns, if those are unimodular."""
    D = div.deg
    H = hnf(D)
    pivots = []
    for r in H.entries:
        pivots.append(next(j for j, x in enumerate(r) if x))
    sub = D.submatrix(range(D.rows), pivots)
    if abs(sub.det()) == 1:
        inv = sub.inverse()
        cols = []
        for k in range(D.rows):
            v = [0] * D.cols
            for t, j in enumerate(pivots):
                v[j] = inv[t, k]
            cols.append(tuple(v))
        return IntMatrix.from_columns(cols, rows=D.cols)
    return div.lift


@dataclass(frozen=True)
class NefData:
    section: IntMatrix
    inequalities: tuple[Vector, ...]

    @cached_property
    def cone(self) -> RationalCone:
        return RationalCone.from_inequalities(self.inequalities)

    @property
    def rays(self) -> tuple[Vector, ...]:
        return self.cone.rays

    def contains(self, cls: Sequence[int]) -> bool:
        return all(_dot(a, cls) >= 0 for a in self.inequalities)


def nef_cone(f: Fan, div: Optional[DivisorTheory] = None) -> NefData:
    """Nef cone in Cl coordinates, cut out by its facet inequalities."""
    _require_smooth_projective(f)
    if div is None:
        div = class_group(f)
    if not div.cl_group.is_free():
        raise FanError("class group has torsion")
    s = _section_from_hnf(div)
    k = div.cl_group.ngens
    forms = set()
    for w in support_inequalities(f):
        phi = tuple(_dot(w, s.col(j)) for j in range(k))
        if any(phi):
            forms.add(primitive(phi))
    forms = sorted(forms)
    kept = []
    for i, a in enumerate(forms):
        others = forms[:i] + forms[i + 1:]
        if not _in_cone_lp(a, others):
            kept.append(a)
    return NefData(s, tuple(kept))


def is_nef(f: Fan, d: Sequence[int]) -> bool:
    """Convexity of the support function of a T-divisor on a smooth fan."""
    if not is_smooth(f):
        raise FanError("fan is not smooth")
    a = tuple(d)
    if len(a) != f.nrays:
        raise ValueError("divisor length does not match the number of rays")
    return all(_dot(w, a) >= 0 for w in support_inequalities(f))


@dataclass(frozen=True)
class LatticePolytope:
    """P_D = {m : <m, u_rho> >= -a_rho}."""

    rays: tuple[Vector, ...]
    a: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def contains(self, m: Sequence[int]) -> bool:
        return all(_dot(m, u) >= -ai for u, ai in zip(self.rays, self.a))

    def count(self) -> int:
        n = self.dim
        A_ub = [[-x for x in u] for u in self.rays]
        b_ub = list(self.a)

        def rec(fixed: list[int]) -> int:
            k = len(fixed)
            if k == n:
                return 1 if self.contains(fixed) else 0
            A_eq = [[int(i == j) for j in range(n)] for i in range(k)]
            e = [int(i == k) for i in range(n)]
            lo = solve_lp(e, A_ub, b_ub, A_eq, fixed, maximize=False)
            if lo.status == "infeasible":
                return 0
            hi = solve_lp(e, A_ub, b_ub, A_eq, fixed, maximize=True)
            if lo.status == "unbounded" or hi.status == "unbounded":
                raise ConeError("polytope is unbounded")
            total = 0
            for v in range(ceil(lo.x[k]), floor(hi.x[k]) + 1):
                total += rec(fixed + [v])
            return total

        return rec([])

    def points(self) -> list[Vector]:
        """Brute-force enumeration in the LP bounding box (for small cases and tests)."""
        n = self.dim
        A_ub = [[-x for x in u] for u in self.rays]
        bounds = []
        for k in range(n):
            e = [int(i == k) for i in range(n)]
            lo = solve_lp(e, A_ub, list(self.a), maximize=False)
            if lo.status == "infeasible":
                return []
            hi = solve_lp(e, A_ub, list(self.a))
            if lo.status == "unbounded" or hi.status == "unbounded":
                raise ConeError("polytope is unbounded")
            bounds.append(range(ceil(lo.x[k]), floor(hi.x[k]) + 1))
        from itertools import product
        return [p for p in product(*bounds) if self.contains(p)]


def h0(f: Fan, d: Sequence[int]) -> int:
    """dim H^0(X, O(D)) = number of lattice points of P_D."""
    a = tuple(int(x) for x in d)
    if len(a) != f.nrays:
        raise ValueError("divisor length does not match the number of rays")
    return LatticePolytope(f.rays, a).count()


def h0_of_class(f: Fan, div: DivisorTheory, cls: Sequence[int]) -> int:
    return h0(f, div.lift_class(cls))
