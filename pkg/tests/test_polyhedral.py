from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SMOOTH_FANS, pipeline
from oracles import brute_force_h0, primitive_vectors, rank2_hilbert_basis
from toric_descent.fan import FanError
from toric_descent.io import bundled_fan
from toric_descent.polyhedral import (ConeError, RationalCone, extreme_rays, facets_from_generators, h0, h0_of_class,
                                      hilbert_basis, is_nef, nef_cone, rays_from_inequalities)

PRIMITIVE5 = primitive_vectors(5)


class TestExtremeRays:
    def test_halfplane_example(self):
        assert extreme_rays(RationalCone.from_inequalities([(1, 0), (1, 2)])) == ((0, 1), (2, -1))

    def test_redundant_generator_dropped(self):
        assert extreme_rays(RationalCone.from_generators([(1, 0), (1, 1), (0, 1), (2, 1)])) == ((0, 1), (1, 0))

    def test_positive_orthant(self):
        c = RationalCone.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
        assert extreme_rays(c) == ((0, 0, 1), (0, 1, 0), (1, 0, 0))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.sampled_from([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 2), (2, 1, 1), (1, 2, 3)]),
                    min_size=3, max_size=6, unique=True))
    def test_double_description_round_trip(self, gens):
        c = RationalCone.from_generators(gens)
        if c.dim < 3:
            return
        facets = facets_from_generators(gens, 3)
        assert set(rays_from_inequalities(facets, 3)) == set(extreme_rays(c))
        assert all(c.contains(g) for g in gens)


class TestHilbertBasis:
    def test_examples(self):
        assert hilbert_basis(RationalCone.from_generators([(1, 0), (1, 3)])) == ((1, 0), (1, 1), (1, 2), (1, 3))
        assert hilbert_basis(RationalCone.from_generators([(1, 0), (0, 1)])) == ((0, 1), (1, 0))
        assert hilbert_basis(RationalCone.from_generators([(1, 0, 0), (0, 1, 0), (1, 1, 2)])) == \
            ((0, 1, 0), (1, 0, 0), (1, 1, 1), (1, 1, 2))

    def test_not_strongly_convex(self):
        with pytest.raises(ConeError):
            hilbert_basis(RationalCone.from_generators([(1, 0), (-1, 0), (0, 1)]))

    @settings(max_examples=300, deadline=None)
    @given(st.sampled_from(PRIMITIVE5), st.sampled_from(PRIMITIVE5))
    def test_rank2_brute_force(self, g1, g2):
        if g1[0] * g2[1] - g1[1] * g2[0] == 0:
            return
        assert hilbert_basis(RationalCone.from_generators([g1, g2])) == rank2_hilbert_basis(g1, g2)

    def test_lower_dimensional_cone(self):
        # a ray and a 2-dimensional cone inside Z^3
        assert hilbert_basis(RationalCone.from_generators([(1, 1, 1)])) == ((1, 1, 1),)
        hb = hilbert_basis(RationalCone.from_generators([(1, 0, 0), (1, 2, 0)]))
        assert hb == ((1, 0, 0), (1, 1, 0), (1, 2, 0))


class TestNef:
    @pytest.mark.parametrize("name,rays,facets", [
        ("p2", ((1,),), 1),
        ("p1xp1", ((0, 1), (1, 0)), 2),
        ("p1xp1xp1", ((0, 0, 1), (0, 1, 0), (1, 0, 0)), 3),
        ("hirzebruch2", ((1, 0), (2, 1)), 2),
    ])
    def test_examples(self, name, rays, facets):
        nef = pipeline(name).nef
        assert nef.rays == rays
        assert len(nef.inequalities) == facets

    def test_dp6(self):
        nef = pipeline("dp6").nef
        assert len(nef.rays) == 5 and len(nef.inequalities) == 6

    def test_not_projective(self):
        with pytest.raises(FanError):
            nef_cone(bundled_fan("nonprojective3"))

    @pytest.mark.parametrize("name", SMOOTH_FANS)
    def test_nef_classes_have_sections(self, name):
        p = pipeline(name)
        for r in p.nef.rays:
            assert h0_of_class(p.fan, p.div, r) >= 1

    @pytest.mark.parametrize("name", SMOOTH_FANS)
    def test_is_nef_matches_cone(self, name):
        p = pipeline(name)
        for d in ([1] * p.fan.nrays, [0] * p.fan.nrays, [-1] + [0] * (p.fan.nrays - 1), [2] + [0] * (p.fan.nrays - 1)):
            assert is_nef(p.fan, d) == p.nef.contains(p.div.classify(d))

    def test_is_nef_examples(self):
        f = bundled_fan("hirzebruch1")
        p = pipeline("hirzebruch1")
        # the exceptional curve has a negative-degree normal bundle
        negative = [i for i in range(f.nrays) if p.div.ray_classes()[i] == (0, 1)]
        d = [int(i in negative) for i in range(f.nrays)]
        assert not is_nef(f, d)
        assert is_nef(f, [1] * f.nrays)


class TestH0:
    def test_zero_divisor(self):
        for name in SMOOTH_FANS:
            assert h0(bundled_fan(name), [0] * bundled_fan(name).nrays) == 1

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_projective_space(self, n):
        f = bundled_fan(f"p{n}")
        for d in range(5):
            assert h0(f, [d] + [0] * n) == comb(n + d, n)

    def test_product_multiplicative(self):
        f = bundled_fan("p1xp1")
        div = pipeline("p1xp1").div
        for a in range(4):
            for b in range(4):
                assert h0_of_class(f, div, (a, b)) == (a + 1) * (b + 1)

    def test_negative_has_no_sections(self):
        f = bundled_fan("p2")
        assert h0(f, [-1, 0, 0]) == 0

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(["p2", "p1xp1", "hirzebruch1", "hirzebruch2", "dp6", "p1xp1xp1"]), st.data())
    def test_brute_force(self, name, data):
        f = bundled_fan(name)
        a = data.draw(st.lists(st.integers(-1, 3), min_size=f.nrays, max_size=f.nrays))
        assert h0(f, a) == brute_force_h0(f.rays, a, box=8)

    def test_unbounded(self):
        f = bundled_fan("p1xp1")
        from toric_descent.fan import Fan
        g = Fan.make(2, [(1, 0), (0, 1)], [(0, 1)])
        with pytest.raises(ConeError):
            h0(g, [0, 0])
        assert h0(f, [1, 0, 0, 0]) == 2
