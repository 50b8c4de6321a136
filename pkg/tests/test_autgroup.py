from itertools import product
from math import factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SMOOTH_FANS, pipeline
from toric_descent.autgroup import class_aut_group, cox_algebra_shape, fan_automorphisms, weight_decomposition
from toric_descent.fan import class_group
from toric_descent.io import bundled_fan
from toric_descent.report import group_name
from toric_descent.zmodule import IntMatrix

# name: (|W|, |W°|, |J|, J)
ORDERS = {
    "p1": (2, 2, 1, "trivial"),
    "p2": (6, 6, 1, "trivial"),
    "p3": (24, 24, 1, "trivial"),
    "p1xp1": (8, 4, 2, "C2"),
    "p1xp3": (48, 48, 1, "trivial"),
    "p1xp1xp1": (48, 8, 6, "S3"),
    "hirzebruch1": (2, 2, 1, "trivial"),
    "hirzebruch2": (2, 2, 1, "trivial"),
    "dp6": (12, 1, 12, "S3xC2"),
}


def brute_force_weyl_order(f):
    """Count integer matrices with small entries that permute rays and max cones."""
    n = f.rank
    box = range(-2, 3) if n <= 2 else range(-1, 2)
    rays = {r: i for i, r in enumerate(f.rays)}
    cones = set(f.max_cones)
    count = 0
    for entries in product(box, repeat=n * n):
        g = IntMatrix.from_rows([entries[i * n:(i + 1) * n] for i in range(n)], cols=n)
        if abs(g.det()) != 1:
            continue
        pi = [rays.get(g @ u) for u in f.rays]
        if None in pi or len(set(pi)) != len(pi):
            continue
        if all(tuple(sorted(pi[i] for i in c)) in cones for c in f.max_cones):
            count += 1
    return count


class TestOrders:
    @pytest.mark.parametrize("name", SMOOTH_FANS)
    def test_table(self, name):
        p = pipeline(name)
        w, w0, j, label = ORDERS[name]
        assert (len(p.W), len(p.J.kernel), p.J.order) == (w, w0, j)
        assert group_name(p.J.group) == label

    @pytest.mark.parametrize("name", ["p1", "p2", "p3", "p1xp1", "p1xp1xp1", "hirzebruch1", "hirzebruch2", "dp6"])
    def test_brute_force_oracle(self, name):
        # every symmetry of these fans has entries of absolute value at most 2 (at most 1 in rank 3)
        assert brute_force_weyl_order(bundled_fan(name)) == ORDERS[name][0]

    @pytest.mark.parametrize("name", SMOOTH_FANS)
    def test_exact_sequence(self, name):
        p = pipeline(name)
        assert len(p.W) == len(p.J.kernel) * p.J.order

    @pytest.mark.parametrize("name", SMOOTH_FANS)
    def test_kernel_is_product_of_symmetric_groups(self, name):
        p = pipeline(name)
        assert len(p.J.kernel) == prod(factorial(n) for n in p.J.weights.multiplicities)
        assert cox_algebra_shape(p.J.weights).weyl_order == len(p.J.kernel)


class TestSection:
    @pytest.mark.parametrize("name", SMOOTH_FANS)
    def test_quotient_after_section_is_identity(self, name):
        J = pipeline(name).J
        assert all(J.quotient[J.section[j]] == j for j in range(J.order))

    @pytest.mark.parametrize("name", SMOOTH_FANS)
    def test_section_is_homomorphism(self, name):
        J = pipeline(name).J
        Wg = J.W.group
        for a in range(J.order):
            for b in range(J.order):
                assert J.section[J.group.mul(a, b)] == Wg.mul(J.section[a], J.section[b])

    def test_lambda_permutation(self):
        J = pipeline("p1xp1").J
        assert sorted(J.lambda_perms) == [(0, 1), (1, 0)]


class TestWeights:
    def test_p1xp1(self):
        wd = pipeline("p1xp1").J.weights
        assert set(wd.classes) == {(1, 0), (0, 1)}
        assert wd.multiplicities == (2, 2)

    def test_dp6(self):
        wd = pipeline("dp6").J.weights
        assert len(wd.classes) == 6 and set(wd.multiplicities) == {1}

    def test_hirzebruch(self):
        for name, extra in (("hirzebruch1", (1, 1)), ("hirzebruch2", (2, 1))):
            wd = pipeline(name).J.weights
            assert sorted(wd.multiplicities) == [1, 1, 2]
            assert extra in wd.classes

    def test_cox_shape(self):
        shape = cox_algebra_shape(pipeline("p1xp3").J.weights)
        assert sorted(shape.sizes) == [2, 4]
        assert shape.weyl_order == 48

    @pytest.mark.parametrize("name", SMOOTH_FANS)
    def test_weight_classes_cover_rays(self, name):
        p = pipeline(name)
        wd = weight_decomposition(p.div)
        assert sum(wd.multiplicities) == p.fan.nrays
        for k in range(len(wd.classes)):
            assert all(p.div.ray_classes()[i] == wd.classes[k] for i in wd.rays_of(k))


UNIMODULAR = st.sampled_from([[[1, 1], [0, 1]], [[0, 1], [1, 0]], [[2, 1], [1, 1]], [[1, 0], [-3, 1]]])


class TestInvariance:
    @settings(max_examples=15, deadline=None)
    @given(st.sampled_from(["p2", "p1xp1", "hirzebruch1", "dp6"]), UNIMODULAR, st.randoms(use_true_random=False))
    def test_orders_invariant_under_conjugation(self, name, g, rnd):
        f = bundled_fan(name)
        perm = list(range(f.nrays))
        rnd.shuffle(perm)
        h = f.transform(IntMatrix.from_rows(g)).relabel(perm)
        div = class_group(h)
        W = fan_automorphisms(h, div)
        J = class_aut_group(W, div)
        w, w0, j, label = ORDERS[name]
        assert (len(W), len(J.kernel), J.order) == (w, w0, j)
        assert group_name(J.group) == label
