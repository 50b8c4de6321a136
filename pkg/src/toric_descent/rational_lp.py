"""Exact linear programming over the rationals.

A dense two-phase simplex on ``fractions.Fraction`` with Bland's rule, which
guarantees termination. Problems here have at most a few dozen variables, so
nothing clever is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _simplex(T: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """Maximize the objective in the last row of tableau T in place.

    T rows are constraints ``[coeffs..., rhs]``; the last row holds reduced
    costs (negated objective). Only the first ``ncols`` columns may enter.
    """
    m = len(T) - 1
    while True:
        obj = T[-1]
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(T, best[1], enter)
        basis[best[1]] = enter


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    pv = T[r][c]
    row = [x / pv for x in T[r]]
    T[r] = row
    for i, other in enumerate(T):
        if i != r and other[c] != 0:
            f = other[c]
            T[i] = [a - f * b for a, b in zip(other, row)]


def solve_lp(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
             A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
             nonneg: Optional[Sequence[bool]] = None, maximize: bool = True) -> LPResult:
    """Optimize c.x subject to A_ub x <= b_ub, A_eq x == b_eq.

    Variables are free unless ``nonneg[i]`` is set. All data is converted to
    Fractions, so integer and Fraction inputs are both exact.
    """
    n = len(c)
    if nonneg is None:
        nonneg = [False] * n
    # column layout: for each variable one (nonneg) or two (free) columns
    colmap: list[tuple[int, int]] = []  # variable -> (plus column, minus column or -1)
    k = 0
    for i in range(n):
        if nonneg[i]:
            colmap.append((k, -1))
            k += 1
        else:
            colmap.append((k, k + 1))
            k += 2
    nx = k

    def expand(row):
        out = [Fraction(0)] * nx
        for i, a in enumerate(row):
            a = Fraction(a)
            p, q = colmap[i]
            out[p] = a
            if q >= 0:
                out[q] = -a
        return out

    rows = []
    rhs = []
    n_ub = len(A_ub)
    for row, b in zip(A_ub, b_ub):
        rows.append(expand(row))
        rhs.append(Fraction(b))
    for row, b in zip(A_eq, b_eq):
        rows.append(expand(row))
        rhs.append(Fraction(b))
    m = len(rows)
    # slacks for inequalities
    ncols = nx + n_ub
    for i in range(m):
        rows[i] += [Fraction(int(i == j)) for j in range(n_ub)]
    # make rhs nonnegative
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]
    # artificials everywhere (simple and exact; removed after phase 1)
    total = ncols + m
    T = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [ncols + i for i in range(m)]
    # phase 1: maximize -sum(artificials)
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(ncols):
            obj[j] -= T[i][j]
        obj[-1] -= T[i][-1]
    T.append(obj)
    _simplex(T, basis, total)
    if T[-1][-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= ncols:
            j = next((j for j in range(ncols) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, i, j)
                basis[i] = j
    keep = [i for i in range(m) if basis[i] < ncols]
    T = [T[i][:ncols] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    # phase 2
    cost = expand([Fraction(x) * (1 if maximize else -1) for x in c]) + [Fraction(0)] * n_ub
    obj = [-a for a in cost] + [Fraction(0)]
    for i, b in enumerate(basis):
        if obj[b] != 0:
            f = obj[b]
            obj = [a - f * r for a, r in zip(obj, T[i])]
    T.append(obj)
    status = _simplex(T, basis, ncols)
    if status == "unbounded":
        return LPResult("unbounded")
    vals = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        vals[b] = T[i][-1]
    x = tuple(vals[p] - (vals[q] if q >= 0 else 0) for p, q in colmap)
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult("optimal", x, value)


def feasible_point(A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                   A_eq: Sequence[Sequence] = (), b_eq: Sequence = (), n: Optional[int] = None):
    """A rational point satisfying the constraints, or None."""
    if n is None:
        n = len((list(A_ub) + list(A_eq))[0])
    res = solve_lp([0] * n, A_ub, b_ub, A_eq, b_eq)
    return res.x if res.status == "optimal" else None
