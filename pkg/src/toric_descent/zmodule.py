"""Exact integer linear algebra.

Everything here works over Python integers (arbitrary precision). Matrices
are small (desk scale), so the algorithms are the textbook ones: Smith and
Hermite normal forms by repeated Euclidean elimination, kernels by tracked
row echelon form, and cokernels read off from the Smith form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm
from typing import Iterable, Optional, Sequence


# ---------------------------------------------------------------------------
# IntMatrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major.

    The shape is carried explicitly so that 0 x n and n x 0 matrices behave.
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: Optional[int] = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]], rows: Optional[int] = None) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in columns]
        if rows is None:
            if not cols:
                raise ValueError("cannot infer row count of an empty matrix")
            rows = len(cols[0])
        return cls.from_rows(zip(*cols), cols=len(cols)) if cols else cls.zeros(rows, 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(diag[i] if i == j and i < len(diag) else 0
                                           for j in range(cols)) for i in range(rows)))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "IntMatrix":
        """Matrix sending basis vector e_i to e_perm[i]."""
        n = len(perm)
        data = [[0] * n for _ in range(n)]
        for i, p in enumerate(perm):
            data[p][i] = 1
        return cls.from_rows(data, cols=n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                         tuple(() for _ in range(self.cols)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            return IntMatrix(self.rows, other.cols, tuple(
                tuple(sum(a * b for a, b in zip(r, c)) for c in ocols) for r in self.entries))
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(k * a for a in r) for r in self.entries))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self.entries])

    def inverse(self) -> "IntMatrix":
        """Inverse of a unimodular matrix; raises if the inverse is not integral."""
        inv = rational_inverse(self)
        if any(x.denominator != 1 for r in inv for x in r):
            raise ValueError("matrix is not unimodular")
        return IntMatrix.from_rows([[int(x) for x in r] for r in inv], cols=self.cols)

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


def as_matrix(A, cols: Optional[int] = None) -> IntMatrix:
    if isinstance(A, IntMatrix):
        return A
    return IntMatrix.from_rows(A, cols=cols)


def _bareiss_det(M: list[list[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    M = [r[:] for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rational_inverse(A: IntMatrix) -> list[list[Fraction]]:
    n = A.rows
    if A.cols != n:
        raise ValueError("inverse of a non-square matrix")
    M = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(A.entries)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [r[n:] for r in M]


def rank(A: IntMatrix) -> int:
    return len(_row_echelon([list(r) for r in A.entries], A.cols)[0])


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = reduce(gcd, v, 0)
    return tuple(v) if g in (0, 1) else tuple(x // g for x in v)


# ---------------------------------------------------------------------------
# Echelon forms
# ---------------------------------------------------------------------------


def _row_echelon(rows: list[list[int]], ncols: int, track: bool = False):
    """Integer row echelon form by Euclidean row operations.

    Returns (nonzero echelon rows, pivot columns, T, zero_row_indices) where
    T @ original = echelon stacked over zero rows when ``track`` is set.
    """
    m = len(rows)
    E = [r[:] for r in rows]
    T = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if E[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(E[i][c]), i))
            if p != r:
                E[r], E[p] = E[p], E[r]
                if track:
                    T[r], T[p] = T[p], T[r]
            done = True
            for i in range(r + 1, m):
                if E[i][c] != 0:
                    q = E[i][c] // E[r][c]
                    E[i] = [a - q * b for a, b in zip(E[i], E[r])]
                    if track:
                        T[i] = [a - q * b for a, b in zip(T[i], T[r])]
                    if E[i][c] != 0:
                        done = False
            if done:
                break
        if any(E[i][c] != 0 for i in range(r, m)):
            if E[r][c] < 0:
                E[r] = [-a for a in E[r]]
                if track:
                    T[r] = [-a for a in T[r]]
            pivots.append(c)
            r += 1
    return E[:r], pivots, T, list(range(r, m))


def hnf_rows(vectors: Iterable[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form basis of the lattice spanned by ``vectors``.

    Pivots are positive and entries above each pivot lie in [0, pivot). The
    result is the canonical basis of the spanned lattice.
    """
    E, pivots, _, _ = _row_echelon([list(v) for v in vectors], ncols)
    for k, c in enumerate(pivots):
        for i in range(k):
            q = E[i][c] // E[k][c]
            if q:
                E[i] = [a - q * b for a, b in zip(E[i], E[k])]
    return tuple(tuple(r) for r in E)


def hnf(A) -> IntMatrix:
    A = as_matrix(A)
    rows = hnf_rows(A.entries, A.cols)
    return IntMatrix.from_rows(rows, cols=A.cols)


def kernel_basis(A) -> tuple[tuple[int, ...], ...]:
    """Basis (canonical HNF) of the integer kernel {x : A x = 0}."""
    A = as_matrix(A)
    At = [list(A.col(j)) for j in range(A.cols)]
    _, _, T, zero = _row_echelon(At, A.rows, track=True)
    return hnf_rows([T[i] for i in zero], A.cols)


def left_kernel_basis(A) -> tuple[tuple[int, ...], ...]:
    """Basis of {y : y A = 0}."""
    return kernel_basis(as_matrix(A).T)


def span_contains(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    B = IntMatrix.from_columns(basis)
    return solve_linear(B, v) is not None


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def snf(A) -> SmithDecomposition:
    """Smith normal form with transforms: U @ A @ V == D.

    Pivot rule: smallest nonzero absolute value in the active block, ties
    broken by (row, column). Deterministic for a fixed input.
    """
    A = as_matrix(A)
    m, n = A.shape
    D = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for r in D:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, D[i][t] // p)
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // p)
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            # fold the offending row into the pivot row and reduce again
            add_row(t, bad[0], -1)
        else:  # pragma: no cover - loop always exits via break
            pass
        if best is None:
            break
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return SmithDecomposition(IntMatrix.from_rows(U, cols=m), IntMatrix.from_rows(D, cols=n),
                              IntMatrix.from_rows(V, cols=n))


def invariant_factors(A) -> tuple[int, ...]:
    return snf(A).diagonal


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------


class FGAbelianGroup:
    """Z/d_1 + ... + Z/d_k + Z^r in canonical form.

    ``invariant_factors`` lists nonzero factors (each > 1, d_i | d_{i+1})
    followed by zeros for free summands. Elements are coordinate tuples,
    reduced modulo the factors.
    """

    __slots__ = ("invariant_factors",)

    def __init__(self, factors: Iterable[int]):
        fs = [abs(int(d)) for d in factors]
        finite = sorted(d for d in fs if d > 1)
        free = [0] * sum(1 for d in fs if d == 0)
        for a, b in zip(finite, finite[1:]):
            if b % a:
                raise ValueError(f"invariant factors {finite} do not form a divisibility chain")
        self.invariant_factors = tuple(finite) + tuple(free)

    @classmethod
    def presented(cls, factors: Iterable[int]) -> "FGAbelianGroup":
        """Product of cyclic groups in the given order, without canonicalization.

        Used for direct products whose coordinates must stay in blocks.
        """
        out = cls.__new__(cls)
        out.invariant_factors = tuple(abs(int(d)) for d in factors if abs(int(d)) != 1)
        return out

    def __eq__(self, other):
        return isinstance(other, FGAbelianGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def is_free(self) -> bool:
        return not self.torsion

    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % d if d else x for x, d in zip(v, self.invariant_factors))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def add(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    def elements(self) -> list[tuple[int, ...]]:
        if self.free_rank:
            raise ValueError("infinite group has no element list")
        return list(product(*(range(d) for d in self.invariant_factors)))

    def element_order(self, v: Sequence[int]) -> Optional[int]:
        v = self.reduce(v)
        out = 1
        for x, d in zip(v, self.invariant_factors):
            if d == 0:
                if x:
                    return None
            else:
                out = lcm(out, d // gcd(x, d))
        return out

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FGAbelianGroup({list(self.invariant_factors)})"


@dataclass(frozen=True)
class Quotient:
    """A quotient lattice A / B presented as an FGAbelianGroup.

    ``proj`` maps ambient coordinate vectors (lying in A) to group
    coordinates; ``lift`` maps group coordinates back to ambient vectors.
    """

    group: FGAbelianGroup
    proj: IntMatrix
    lift: IntMatrix

    def classify(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.group.reduce(self.proj @ v)

    def lift_element(self, e: Sequence[int]) -> tuple[int, ...]:
        return self.lift @ e


def cokernel(A) -> Quotient:
    """Z^rows / (column span of A).

    The free coordinates are normalized to the HNF basis of the left kernel of
    A so that e.g. divisor classes come out in a canonical basis.
    """
    A = as_matrix(A)
    m = A.rows
    sd = snf(A)
    diag = list(sd.diagonal) + [0] * (m - min(A.rows, A.cols))
    r = sd.rank
    U = [list(row) for row in sd.U.entries]
    free_rows = hnf_rows(U[r:], m) if r < m else ()
    if len(free_rows) != m - r:  # pragma: no cover - U is unimodular
        raise ArithmeticError("left kernel basis has wrong rank")
    U = U[:r] + [list(x) for x in free_rows]
    keep = [i for i in range(m) if diag[i] != 1]
    Um = IntMatrix.from_rows(U, cols=m) if m else IntMatrix.zeros(0, 0)
    Uinv = Um.inverse() if m else Um
    proj = Um.submatrix(keep, range(m))
    lift = Uinv.submatrix(range(m), keep)
    return Quotient(FGAbelianGroup(diag[i] for i in keep), proj, lift)


def subquotient(sub_basis: Sequence[Sequence[int]], relations: Sequence[Sequence[int]], ambient: int) -> Quotient:
    """span(sub_basis) / span(relations), with relations inside span(sub_basis).

    ``sub_basis`` must be a basis of a saturated sublattice (e.g. a kernel), so
    that an integral left inverse exists.
    """
    k = len(sub_basis)
    if k == 0:
        return Quotient(FGAbelianGroup(()), IntMatrix.zeros(0, ambient), IntMatrix.zeros(ambient, 0))
    B = IntMatrix.from_columns(sub_basis, rows=ambient)
    left = left_inverse(B)
    coords = []
    for v in relations:
        c = left @ v
        if B @ c != tuple(v):
            raise ValueError("relation does not lie in the sublattice")
        coords.append(c)
    C = IntMatrix.from_columns(coords, rows=k) if coords else IntMatrix.zeros(k, 0)
    q = cokernel(C)
    return Quotient(q.group, q.proj @ left, B @ q.lift)


def left_inverse(B: IntMatrix) -> IntMatrix:
    """Integral L with L @ B == I for B of full column rank and saturated span."""
    sd = snf(B)
    if sd.rank != B.cols or any(d != 1 for d in sd.diagonal):
        raise ValueError("basis does not span a saturated sublattice")
    # U B V = [I; 0]  =>  (V [I 0] U) B = I
    k = B.cols
    top = IntMatrix.from_rows([sd.U.row(i) for i in range(k)], cols=B.rows)
    return sd.V @ top


# ---------------------------------------------------------------------------
# Linear Diophantine systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearSolution:
    particular: tuple[int, ...]
    kernel: tuple[tuple[int, ...], ...]


def solve_linear(A, b: Sequence[int]) -> Optional[LinearSolution]:
    """One integer solution of A x = b plus a kernel basis, or None."""
    A = as_matrix(A)
    b = tuple(int(x) for x in b)
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    sd = snf(A)
    c = sd.U @ b if A.rows else ()
    diag = sd.diagonal
    y = [0] * A.cols
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ci != 0:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    x = sd.V @ y if A.cols else ()
    return LinearSolution(tuple(x), kernel_basis(A))


def solve_equivariant_section(P_action: Sequence, M_action: Sequence, pi) -> Optional[IntMatrix]:
    """Find s : M -> P with pi @ s == I and P_g @ s == s @ M_g for all g.

    ``P_action`` and ``M_action`` are matching lists of generator matrices.
    When every P_g is a permutation matrix the unknowns are reduced to one
    stabilizer-invariant row per orbit (Frobenius reciprocity); otherwise the
    full system over the entries of s is solved. Returns None when no integral
    equivariant section exists.
    """
    pi = as_matrix(pi)
    P_action = [as_matrix(g) for g in P_action]
    M_action = [as_matrix(g) for g in M_action]
    if len(P_action) != len(M_action):
        raise ValueError("action lists differ in length")
    m, p = pi.shape
    if not cokernel(pi).group.is_trivial():
        raise ValueError("not a surjection")
    for Pg, Mg in zip(P_action, M_action):
        if pi @ Pg != Mg @ pi:
            raise ValueError("pi does not commute with the actions")

    if all(_as_permutation(g) is not None for g in P_action):
        basis = _equivariant_maps_permutation(P_action, M_action, p, m)
    else:
        basis = _equivariant_maps_general(P_action, M_action, p, m)
    if not basis:
        return None if m else IntMatrix.zeros(p, 0)
    # pi @ (sum t_k S_k) == I
    columns = [tuple(x for row in (pi @ S).entries for x in row) for S in basis]
    target = tuple(int(i == j) for i in range(m) for j in range(m))
    sol = solve_linear(IntMatrix.from_columns(columns, rows=m * m), target)
    if sol is None:
        return None
    s = IntMatrix.zeros(p, m)
    for t, S in zip(sol.particular, basis):
        if t:
            s = s + S.scale(t)
    return s


def _as_permutation(g: IntMatrix) -> Optional[tuple[int, ...]]:
    if g.rows != g.cols:
        return None
    perm = []
    for j in range(g.cols):
        col = g.col(j)
        ones = [i for i, x in enumerate(col) if x == 1]
        if len(ones) != 1 or any(x not in (0, 1) for x in col):
            return None
        perm.append(ones[0])
    return tuple(perm) if len(set(perm)) == len(perm) else None


def _equivariant_maps_permutation(P_action, M_action, p, m) -> list[IntMatrix]:
    perms = [_as_permutation(g) for g in P_action]
    M_inv = [g.inverse() for g in M_action]
    ident = IntMatrix.identity(m)
    seen = [False] * p
    basis = []
    for root in range(p):
        if seen[root]:
            continue
        # transversal: point -> (M_t, M_t^{-1}) with t(root) = point
        trans = {root: (ident, ident)}
        queue = [root]
        while queue:
            i = queue.pop(0)
            for perm, g, gi in zip(perms, M_action, M_inv):
                j = perm[i]
                if j not in trans:
                    Mt, Mti = trans[i]
                    trans[j] = (g @ Mt, Mti @ gi)
                    queue.append(j)
        for i in trans:
            seen[i] = True
        # Schreier generators of the stabilizer of root, as M-matrices
        stab = []
        for i, (Mt, Mti) in trans.items():
            for perm, g in zip(perms, M_action):
                j = perm[i]
                h = trans[j][1] @ g @ Mt
                if h != ident:
                    stab.append(h)
        # rows r with r @ h == r for every stabilizer generator
        if stab:
            eqs = [tuple(h.col(c)[k] - int(k == c) for k in range(m))
                   for h in stab for c in range(m)]
            fixed = kernel_basis(IntMatrix.from_rows(eqs, cols=m))
        else:
            fixed = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
        for r in fixed:
            data = [[0] * m for _ in range(p)]
            for i, (Mt, Mti) in trans.items():
                data[i] = list((IntMatrix.from_rows([r], cols=m) @ Mti).row(0))
            basis.append(IntMatrix.from_rows(data, cols=m))
    return basis


def _equivariant_maps_general(P_action, M_action, p, m) -> list[IntMatrix]:
    # unknown s[i][j] at index i*m + j
    eqs = []
    for Pg, Mg in zip(P_action, M_action):
        for i in range(p):
            for j in range(m):
                row = [0] * (p * m)
                for k in range(p):
                    row[k * m + j] += Pg[i, k]
                for k in range(m):
                    row[i * m + k] -= Mg[k, j]
                eqs.append(row)
    if not eqs:
        ker = [tuple(int(i == j) for j in range(p * m)) for i in range(p * m)]
    else:
        ker = kernel_basis(IntMatrix.from_rows(eqs, cols=p * m))
    return [IntMatrix.from_rows([v[i * m:(i + 1) * m] for i in range(p)], cols=m) for v in ker]
