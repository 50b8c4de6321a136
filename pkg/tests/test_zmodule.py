from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from toric_descent.zmodule import (FGAbelianGroup, IntMatrix, cokernel, hnf, invariant_factors, kernel_basis,
                                   left_inverse, snf, solve_equivariant_section, solve_linear)


def small_matrices(max_rows=4, max_cols=4, bound=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def sympy_factors(rows):
    D = smith_normal_form(Matrix(rows))
    return sorted(abs(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0)


class TestSmith:
    def test_examples(self):
        assert snf([[2, 4], [6, 8]]).diagonal == (2, 4)
        assert snf(IntMatrix.identity(3)).diagonal == (1, 1, 1)
        assert snf(IntMatrix.zeros(2, 2)).rank == 0

    @settings(max_examples=150, deadline=None)
    @given(small_matrices())
    def test_decomposition_remultiplies(self, rows):
        A = IntMatrix.from_rows(rows)
        sd = snf(A)
        D = sd.U @ A @ sd.V
        assert D == IntMatrix.diagonal(sd.diagonal, A.rows, A.cols)
        assert abs(sd.U.det()) == 1 and abs(sd.V.det()) == 1
        d = [x for x in sd.diagonal if x]
        assert all(b % a == 0 for a, b in zip(d, d[1:]))

    @settings(max_examples=100, deadline=None)
    @given(small_matrices())
    def test_agrees_with_sympy(self, rows):
        ours = sorted(x for x in snf(IntMatrix.from_rows(rows)).diagonal if x)
        assert ours == sympy_factors(rows)

    @settings(max_examples=80, deadline=None)
    @given(small_matrices(3, 3, 4))
    def test_cokernel_order_is_product_of_factors(self, rows):
        A = IntMatrix.from_rows(rows)
        q = cokernel(A)
        if q.group.free_rank == 0:
            prod = 1
            for d in invariant_factors(A):
                prod *= d
            assert q.group.order() == prod


class TestCokernel:
    def test_examples(self):
        assert cokernel([[2]]).group == FGAbelianGroup([2])
        assert str(cokernel(IntMatrix.from_columns([(1, 1)], rows=2)).group) == "Z"

    def test_dp6_ray_matrix(self):
        R = IntMatrix.from_rows([[1, 0], [0, 1], [-1, -1], [-1, 0], [0, -1], [1, 1]])
        assert str(cokernel(R).group) == "Z^4"

    def test_classify_kills_relations(self):
        A = IntMatrix.from_rows([[2, 0], [0, 3], [1, 1]])
        q = cokernel(A)
        for c in A.columns():
            assert q.classify(c) == q.group.zero()
        for e in q.group.reduce((1, 1)), q.group.zero():
            assert q.classify(q.lift_element(e)) == q.group.reduce(e)


class TestLinear:
    def test_examples(self):
        assert solve_linear([[2]], [4]).particular == (2,)
        assert solve_linear([[2]], [4]).kernel == ()
        assert solve_linear([[2]], [3]) is None
        s = solve_linear([[1, 1]], [1])
        assert s.particular == (1, 0) and s.kernel == ((1, -1),)

    @settings(max_examples=120, deadline=None)
    @given(small_matrices(3, 4, 5), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
    def test_solutions_verify(self, rows, x):
        A = IntMatrix.from_rows(rows)
        b = A @ tuple(x[:A.cols])
        s = solve_linear(A, b)
        assert s is not None
        assert A @ s.particular == b
        for k in s.kernel:
            assert not any(A @ k)
        assert len(s.kernel) == A.cols - snf(A).rank

    def test_kernel_is_saturated(self):
        A = IntMatrix.from_rows([[2, 4, 6]])
        K = IntMatrix.from_columns(kernel_basis(A), rows=3)
        L = left_inverse(K)
        assert L @ K == IntMatrix.identity(2)

    def test_hnf_is_idempotent(self):
        A = IntMatrix.from_rows([[4, 6, 2], [2, 3, 1], [0, 5, 5]])
        assert hnf(hnf(A)) == hnf(A)


def _swap(n, i, j):
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return IntMatrix.permutation(p)


class TestEquivariantSection:
    def test_identity(self):
        I = IntMatrix.identity(2)
        s = solve_equivariant_section([_swap(2, 0, 1)], [_swap(2, 0, 1)], I)
        assert s == I

    def test_norm_obstruction(self):
        # Z[C2] -> Z, (1,1): a section would need 2a = 1
        pi = IntMatrix.from_rows([[1, 1]])
        assert solve_equivariant_section([_swap(2, 0, 1)], [IntMatrix.identity(1)], pi) is None

    def test_p1xp1_omega(self):
        pi = IntMatrix.from_columns([(1, 0), (0, 1), (1, 1)], rows=2)
        s = solve_equivariant_section([_swap(3, 0, 1)], [_swap(2, 0, 1)], pi)
        assert s is not None
        assert pi @ s == IntMatrix.identity(2)
        assert _swap(3, 0, 1) @ s == s @ _swap(2, 0, 1)

    def test_not_surjective(self):
        with pytest.raises(ValueError):
            solve_equivariant_section([IntMatrix.identity(1)], [IntMatrix.identity(1)], IntMatrix.from_rows([[2]]))

    @pytest.mark.parametrize("P,M,pi", [
        ([[[0, 1], [1, 0]]], [[[-1]]], [[1, -1]]),
        ([[[0, 1], [1, 0]]], [[[1]]], [[1, 1]]),
        ([[[-1, 0], [0, 1]]], [[[-1]]], [[1, 0]]),
        ([[[0, 1, 0], [1, 0, 0], [0, 0, 1]]], [[[0, 1], [1, 0]]], [[1, 0, 1], [0, 1, 1]]),
        ([[[0, 1, 0], [1, 0, 0], [0, 0, 1]]], [[[1]]], [[1, 1, 2]]),
    ])
    def test_none_agrees_with_brute_force(self, P, M, pi):
        P = [IntMatrix.from_rows(m) for m in P]
        M = [IntMatrix.from_rows(m) for m in M]
        pi = IntMatrix.from_rows(pi)
        s = solve_equivariant_section(P, M, pi)
        p, m = pi.cols, pi.rows
        found = None
        for entries in product(range(-3, 4), repeat=p * m):
            S = IntMatrix.from_rows([entries[i * m:(i + 1) * m] for i in range(p)], cols=m)
            if pi @ S == IntMatrix.identity(m) and all(a @ S == S @ b for a, b in zip(P, M)):
                found = S
                break
        assert (s is None) == (found is None)
        if s is not None:
            assert pi @ s == IntMatrix.identity(m)
            assert all(a @ s == s @ b for a, b in zip(P, M))


class TestGroup:
    def test_canonical_form(self):
        G = FGAbelianGroup([0, 1, 4, 2])
        assert G.invariant_factors == (2, 4, 0)
        assert str(G) == "Z/2 + Z/4 + Z"
        assert G.free_rank == 1 and G.order() is None

    def test_rejects_non_chain(self):
        with pytest.raises(ValueError):
            FGAbelianGroup([2, 3])

    def test_elements_and_orders(self):
        G = FGAbelianGroup([2, 4])
        assert len(G.elements()) == 8
        assert G.element_order((1, 2)) == 2
        assert G.element_order((0, 1)) == 4
