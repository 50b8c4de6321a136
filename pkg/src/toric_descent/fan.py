"""Fans, their validation and the divisor sequence 0 -> M -> Z^rays -> Cl -> 0."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from functools import reduce
from typing import Optional, Sequence

from .rational_lp import solve_lp
from .zmodule import (FGAbelianGroup, IntMatrix, Quotient, cokernel, kernel_basis, rank,
                      snf, solve_linear)


class FanError(ValueError):
    """Raised when a fan fails a structural or mathematical precondition."""


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    name: str = ""
    # optional fixed basis for Cl; rows are linear forms on Z^rays
    degree_matrix: Optional[tuple[tuple[int, ...], ...]] = None
    class_names: Optional[tuple[str, ...]] = None

    @classmethod
    def make(cls, rank: int, rays, max_cones, name: str = "", degree_matrix=None,
             class_names=None) -> "Fan":
        return cls(int(rank), tuple(tuple(int(x) for x in r) for r in rays),
                   tuple(tuple(sorted(int(i) for i in c)) for c in max_cones), name,
                   None if degree_matrix is None else tuple(tuple(int(x) for x in r) for r in degree_matrix),
                   None if class_names is None else tuple(class_names))

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def cone_rays(self, cone: Sequence[int]) -> list[tuple[int, ...]]:
        return [self.rays[i] for i in cone]

    def transform(self, g: IntMatrix) -> "Fan":
        """Image of the fan under a unimodular change of basis of N."""
        return Fan(self.rank, tuple(g @ r for r in self.rays), self.max_cones, self.name)

    def relabel(self, perm: Sequence[int]) -> "Fan":
        """Rename ray i to perm[i]."""
        rays = [None] * self.nrays
        for i, p in enumerate(perm):
            rays[p] = self.rays[i]
        cones = tuple(tuple(sorted(perm[i] for i in c)) for c in self.max_cones)
        return Fan(self.rank, tuple(rays), cones, self.name)

    def to_json(self) -> dict:
        out = {"rank": self.rank, "rays": [list(r) for r in self.rays],
               "max_cones": [list(c) for c in self.max_cones]}
        if self.name:
            out["name"] = self.name
        if self.degree_matrix is not None:
            out["degree_matrix"] = [list(r) for r in self.degree_matrix]
        if self.class_names is not None:
            out["class_names"] = list(self.class_names)
        return out


@dataclass(frozen=True)
class TDivisor:
    """A torus-invariant Weil divisor sum a_rho D_rho."""

    coefficients: tuple[int, ...]

    def __iter__(self):
        return iter(self.coefficients)

    def __len__(self):
        return len(self.coefficients)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[str, ...] = ()

    def raise_if_invalid(self):
        if not self.valid:
            raise FanError("; ".join(self.violations))


# ---------------------------------------------------------------------------
# cone geometry helpers
# ---------------------------------------------------------------------------


def _strongly_convex(gens: Sequence[Sequence[int]], n: int) -> bool:
    if not gens:
        return True
    res = solve_lp([0] * n, A_ub=[[-x for x in u] for u in gens], b_ub=[-1] * len(gens))
    return res.status == "optimal"


def _in_cone(v: Sequence[int], gens: Sequence[Sequence[int]]) -> bool:
    if not gens:
        return not any(v)
    k = len(gens)
    n = len(v)
    A_eq = [[g[i] for g in gens] for i in range(n)]
    res = solve_lp([0] * k, A_eq=A_eq, b_eq=list(v), nonneg=[True] * k)
    return res.status == "optimal"


def _separable(common, only_a, only_b, n: int) -> bool:
    """Is there m with m = 0 on common, >= 1 on only_a and <= -1 on only_b?"""
    A_ub = [[-x for x in u] for u in only_a] + [list(u) for u in only_b]
    b_ub = [-1] * (len(only_a) + len(only_b))
    A_eq = [list(u) for u in common]
    if not A_ub and not A_eq:
        return True
    res = solve_lp([0] * n, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[0] * len(A_eq))
    return res.status == "optimal"


def cone_facets(gens: Sequence[Sequence[int]], n: int) -> list[frozenset[int]]:
    """Facets of a full-dimensional cone, as sets of generator positions."""
    facets = set()
    for sub in combinations(range(len(gens)), n - 1):
        M = IntMatrix.from_rows([gens[i] for i in sub], cols=n)
        ker = kernel_basis(M)
        if len(ker) != 1:
            continue
        w = ker[0]
        vals = [sum(a * b for a, b in zip(w, g)) for g in gens]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            facets.add(frozenset(i for i, v in enumerate(vals) if v == 0))
    return sorted(facets, key=sorted)


# ---------------------------------------------------------------------------
# validation and predicates
# ---------------------------------------------------------------------------


def validate_fan(f: Fan) -> ValidationReport:
    """Check every structural invariant of a fan and list the violations."""
    v: list[str] = []
    n = f.rank
    if n < 1:
        v.append("rank must be positive")
        return ValidationReport(False, tuple(v))
    for i, r in enumerate(f.rays):
        if len(r) != n:
            v.append(f"ray {i}: dimension {len(r)} does not match rank {n}")
        elif not any(r):
            v.append(f"ray {i}: zero vector")
        elif reduce(gcd, r, 0) != 1:
            v.append(f"ray {i}: ray not primitive")
    seen = {}
    for i, r in enumerate(f.rays):
        if r in seen:
            v.append(f"rays {seen[r]} and {i}: duplicate ray")
        seen.setdefault(r, i)
    for k, c in enumerate(f.max_cones):
        if not c:
            v.append(f"cone {k}: empty")
        if len(set(c)) != len(c):
            v.append(f"cone {k}: repeated ray index")
        for i in c:
            if not 0 <= i < f.nrays:
                v.append(f"cone {k}: ray index {i} out of range")
    if v:
        return ValidationReport(False, tuple(v))
    used = set(i for c in f.max_cones for i in c)
    for i in range(f.nrays):
        if i not in used:
            v.append(f"ray {i}: not contained in any max cone")
    if len(set(f.max_cones)) != len(f.max_cones):
        v.append("duplicate max cone")
    for k, c in enumerate(f.max_cones):
        gens = f.cone_rays(c)
        if not _strongly_convex(gens, n):
            v.append(f"cone {k}: not strongly convex")
            continue
        for pos, i in enumerate(c):
            others = gens[:pos] + gens[pos + 1:]
            if _in_cone(f.rays[i], others):
                v.append(f"cone {k}: ray {i} is not an extreme ray")
    if v:
        return ValidationReport(False, tuple(v))
    for a, b in combinations(range(len(f.max_cones)), 2):
        ca, cb = set(f.max_cones[a]), set(f.max_cones[b])
        if ca <= cb or cb <= ca:
            v.append(f"cones {a} and {b}: one contains the other")
            continue
        common = [f.rays[i] for i in sorted(ca & cb)]
        only_a = [f.rays[i] for i in sorted(ca - cb)]
        only_b = [f.rays[i] for i in sorted(cb - ca)]
        if not _separable(common, only_a, only_b, n):
            v.append(f"cones {a} and {b}: intersection not a face")
    return ValidationReport(not v, tuple(v))


def is_simplicial(f: Fan) -> bool:
    return all(rank(IntMatrix.from_rows(f.cone_rays(c), cols=f.rank)) == len(c) for c in f.max_cones)


def is_smooth(f: Fan) -> bool:
    """Every cone is generated by part of a Z-basis of N."""
    for c in f.max_cones:
        d = snf(IntMatrix.from_rows(f.cone_rays(c), cols=f.rank)).diagonal
        if len(d) != len(c) or any(x != 1 for x in d):
            return False
    return True


def walls(f: Fan) -> dict[frozenset[int], list[int]]:
    """(n-1)-faces of the max cones, mapped to the cones containing them."""
    out: dict[frozenset[int], list[int]] = {}
    for k, c in enumerate(f.max_cones):
        for fac in cone_facets(f.cone_rays(c), f.rank):
            out.setdefault(frozenset(c[i] for i in fac), []).append(k)
    return out


def is_complete(f: Fan) -> bool:
    """Combinatorial completeness test: pure, two-sided walls, connected."""
    n = f.rank
    if not f.max_cones:
        return False
    for c in f.max_cones:
        if rank(IntMatrix.from_rows(f.cone_rays(c), cols=n)) != n:
            return False
    w = walls(f)
    if any(len(ks) != 2 for ks in w.values()):
        return False
    adj = {k: set() for k in range(len(f.max_cones))}
    for ks in w.values():
        adj[ks[0]].add(ks[1])
        adj[ks[1]].add(ks[0])
    seen, stack = {0}, [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(f.max_cones)


def ample_support_lp(f: Fan):
    """Maximize the convexity slack t over support functions, capped at 1.

    Variables: a_rho per ray, m_sigma per max cone, then t. Constraints:
    <m_sigma, u_rho> + a_rho = 0 for rho in sigma and >= t otherwise.
    """
    n, r = f.rank, f.nrays
    cones = f.max_cones
    nv = r + n * len(cones) + 1
    tcol = nv - 1
    A_eq, b_eq, A_ub, b_ub = [], [], [], []
    for k, c in enumerate(cones):
        base = r + n * k
        cs = set(c)
        for rho, u in enumerate(f.rays):
            row = [0] * nv
            row[rho] = 1
            for i in range(n):
                row[base + i] = u[i]
            if rho in cs:
                A_eq.append(row)
                b_eq.append(0)
            else:
                row = [-x for x in row]
                row[tcol] = 1
                A_ub.append(row)
                b_ub.append(0)
    cap = [0] * nv
    cap[tcol] = 1
    A_ub.append(cap)
    b_ub.append(1)
    obj = [0] * nv
    obj[tcol] = 1
    return solve_lp(obj, A_ub, b_ub, A_eq, b_eq)


def wall_relations(f: Fan) -> list[tuple[int, ...]]:
    """For a simplicial fan, the primitive linear relation among the rays of each wall's two cones.

    The relation c with sum c_i u_i = 0 is normalized so that the two rays off
    the wall have positive coefficients; a support function with values -a_rho
    is convex across the wall exactly when sum c_i a_i >= 0.
    """
    out = []
    for wall, ks in sorted(walls(f).items(), key=lambda kv: sorted(kv[0])):
        if len(ks) != 2:
            continue
        a, b = (set(f.max_cones[k]) - wall for k in ks)
        idx = sorted(a | b | wall)
        M = IntMatrix.from_columns([f.rays[i] for i in idx], rows=f.rank)
        kb = kernel_basis(M)
        if len(kb) != 1:
            raise FanError("fan is not simplicial")
        v = kb[0]
        rho = idx.index(next(iter(a)))
        if v[rho] < 0:
            v = tuple(-x for x in v)
        rel = [0] * f.nrays
        for i, x in zip(idx, v):
            rel[i] = x
        out.append(tuple(rel))
    return out


def is_projective(f: Fan) -> bool:
    """A strictly convex support function exists (exact LP certificate).

    Simplicial complete fans use the wall relations (local strict convexity
    across every wall suffices); other fans use the full cone-wise LP.
    """
    if not is_complete(f):
        return False
    if is_simplicial(f):
        rels = wall_relations(f)
        A_ub = [[-x for x in r] + [1] for r in rels] + [[0] * f.nrays + [1]]
        b_ub = [0] * len(rels) + [1]
        res = solve_lp([0] * f.nrays + [1], A_ub, b_ub)
        return res.status == "optimal" and res.value > 0
    res = ample_support_lp(f)
    return res.status == "optimal" and res.value > 0


def irrelevant_generators(f: Fan) -> list[tuple[int, ...]]:
    """Complements of the max cones: the monomial generators of the irrelevant ideal."""
    all_rays = set(range(f.nrays))
    gens = {tuple(sorted(all_rays - set(c))) for c in f.max_cones}
    return sorted(gens, key=lambda s: (len(s), s))


# ---------------------------------------------------------------------------
# class group
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DivisorTheory:
    """The divisor sequence of a fan.

    ``ray_matrix`` is the map M -> Z^rays, m -> (<m, u_rho>). ``deg`` is the
    projection Z^rays -> Cl in the coordinates of ``cl_group`` and ``lift``
    sends group coordinates back to a representative divisor.
    """

    ray_matrix: IntMatrix
    cl_group: FGAbelianGroup
    deg: IntMatrix
    lift: IntMatrix
    class_names: Optional[tuple[str, ...]] = None

    @property
    def nrays(self) -> int:
        return self.ray_matrix.rows

    def classify(self, divisor: Sequence[int]) -> tuple[int, ...]:
        return self.cl_group.reduce(self.deg @ tuple(divisor))

    def ray_class(self, i: int) -> tuple[int, ...]:
        return self.classify([int(j == i) for j in range(self.nrays)])

    def ray_classes(self) -> list[tuple[int, ...]]:
        return [self.ray_class(i) for i in range(self.nrays)]

    def lift_class(self, cls: Sequence[int]) -> tuple[int, ...]:
        return self.lift @ tuple(cls)

    @property
    def quotient(self) -> Quotient:
        return Quotient(self.cl_group, self.deg, self.lift)

    def format_class(self, cls: Sequence[int]) -> str:
        if not self.class_names:
            return "(" + ",".join(str(x) for x in cls) + ")"
        terms = []
        for c, name in zip(cls, self.class_names):
            if c == 0:
                continue
            coef = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, coef + name))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += sign + t
        return s


def class_group(f: Fan) -> DivisorTheory:
    """Cl as the cokernel of M -> Z^rays, with the projection deg."""
    R = IntMatrix.from_rows(f.rays, cols=f.rank)
    if rank(R) != f.rank:
        raise FanError("rays do not span N_R; M -> Z^rays is not injective")
    q = cokernel(R)
    deg, lift, names = q.proj, q.lift, None
    if f.degree_matrix is not None:
        deg, lift = _check_degree_matrix(f, R, q)
        names = f.class_names
    out = DivisorTheory(R, q.group, deg, lift, names)
    if not (out.deg @ R).is_zero():  # pragma: no cover - cokernel guarantees it
        raise ArithmeticError("deg o ray_matrix is nonzero")
    return out


def _check_degree_matrix(f: Fan, R: IntMatrix, q: Quotient):
    D = IntMatrix.from_rows(f.degree_matrix, cols=f.nrays)
    if not q.group.is_free():
        raise FanError("degree_matrix given but Cl has torsion")
    if D.rows != q.group.free_rank:
        raise FanError("degree_matrix has the wrong number of rows")
    if not (D @ R).is_zero():
        raise FanError("degree_matrix does not vanish on principal divisors")
    if not cokernel(D).group.is_trivial():
        raise FanError("degree_matrix is not surjective")
    cols = []
    for i in range(D.rows):
        sol = solve_linear(D, [int(i == j) for j in range(D.rows)])
        cols.append(sol.particular)
    if f.class_names is not None and len(f.class_names) != D.rows:
        raise FanError("class_names length does not match degree_matrix")
    return D, IntMatrix.from_columns(cols, rows=f.nrays)


def is_nonsingular_complete_projective(f: Fan) -> bool:
    return is_smooth(f) and is_projective(f)
