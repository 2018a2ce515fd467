import itertools
import random

import pytest

from qsmooth.duality import (
    dual_pair,
    duality_qs_report,
    good_pair_check,
    induced_system,
    quasismooth_implies_good,
)
from qsmooth.errors import NonIntegralDual, PointOutsideP2
from qsmooth.linalg import in_row_space, vector_sub
from qsmooth.polytope import hull, is_canonical, lattice_points
from qsmooth.qscheck import is_quasismooth


def rows_match_up_to_column_permutation(rows_a, rows_b, width):
    sa = sorted(rows_a)
    for perm in itertools.permutations(range(width)):
        if sorted(tuple(r[p] for p in perm) for r in rows_b) == sa:
            return perm
    return None


CROSS = hull([(1, 0), (-1, 0), (0, 1), (0, -1)])
PLANE_ANTICANONICAL = hull([(2, -1), (-1, 2), (-1, -1)])


class TestGoodPairCheck:
    def test_self_dual_cross_polytope(self):
        gp = good_pair_check(CROSS, CROSS)
        assert gp.is_good

    def test_newton_pair_from_fixtures(self, newton_polytope_pair):
        p1, p2 = newton_polytope_pair
        gp = good_pair_check(p1, p2)
        assert gp.is_good
        assert gp.p2star_integral

    def test_boundary_origin_is_not_good(self):
        shifted = hull([(0, 0), (2, 0), (0, 2), (2, 2)])
        big = hull([(3, 3), (3, -3), (-3, 3), (-3, -3)])
        gp = good_pair_check(shifted, big)
        assert not gp.p1_canonical and not gp.is_good

    def test_non_integral_polar_flagged(self):
        fat = hull([(2, 2), (2, -2), (-2, 2), (-2, -2)])
        gp = good_pair_check(CROSS, fat)
        assert not gp.p2star_integral
        assert not gp.p2star_canonical


class TestInducedSystem:
    def test_plane_anticanonical_gives_all_cubics(self):
        ind = induced_system(PLANE_ANTICANONICAL, PLANE_ANTICANONICAL)
        assert ind.system.num_vars == 3
        expected = sorted(
            (a, b, 3 - a - b) for a in range(4) for b in range(4 - a)
        )
        assert rows_match_up_to_column_permutation(
            expected, ind.system.exponents, 3
        )

    def test_origin_maps_to_all_ones(self):
        ind = induced_system(PLANE_ANTICANONICAL, PLANE_ANTICANONICAL)
        idx = ind.points.index((0, 0))
        assert ind.system.exponents[idx] == (1, 1, 1)

    def test_newton_pair_vertex_rows(self, newton_polytope_pair):
        p1, p2 = newton_polytope_pair
        ind = induced_system(p1, p2)
        assert ind.system.num_monomials == len(lattice_points(p1)) == 27
        expected = [
            (2, 1, 0, 2, 0), (2, 1, 0, 0, 2), (2, 0, 1, 2, 0), (2, 0, 1, 0, 2),
            (0, 3, 0, 2, 0), (0, 3, 0, 0, 2), (0, 0, 3, 2, 0), (0, 0, 3, 0, 2),
        ]
        assert rows_match_up_to_column_permutation(
            expected, ind.system.vertex_exponents(), 5
        )

    def test_exponent_differences_lie_in_ray_row_space(self, newton_polytope_pair):
        p1, p2 = newton_polytope_pair
        ind = induced_system(p1, p2)
        rays = ind.ambient.fan.rays
        ray_rows = [tuple(r[j] for r in rays) for j in range(len(rays[0]))]
        base = ind.system.exponents[0]
        for row in ind.system.exponents[1:]:
            assert in_row_space(vector_sub(row, base), ray_rows, over="rationals")

    def test_point_outside_rejected(self):
        big = hull([(3, 0), (-3, 0), (0, 3), (0, -3)])
        with pytest.raises(PointOutsideP2):
            induced_system(big, CROSS)


class TestDualPair:
    def test_self_dual(self):
        q1, q2 = dual_pair(CROSS, CROSS)
        square = sorted([(1, 1), (1, -1), (-1, 1), (-1, -1)])
        assert sorted(q1.vertices) == square
        assert sorted(q2.vertices) == square
        assert good_pair_check(q1, q2).is_good

    def test_newton_pair_roundtrip(self, newton_polytope_pair):
        p1, p2 = newton_polytope_pair
        q1, q2 = dual_pair(p1, p2)
        assert good_pair_check(q1, q2).is_good
        back1, back2 = dual_pair(q1, q2)
        assert sorted(back1.vertices) == sorted(p1.vertices)
        assert sorted(back2.vertices) == sorted(p2.vertices)

    def test_non_integral_dual_rejected(self):
        fat = hull([(2, 2), (2, -2), (-2, 2), (-2, -2)])
        with pytest.raises(NonIntegralDual):
            dual_pair(fat, fat)

    def test_duals_of_random_reflexive_pairs_are_good(self):
        from generators import random_canonical_polytope
        from qsmooth.polytope import has_integral_vertices, polar_dual

        rng = random.Random(83)
        found = 0
        while found < 8:
            p = random_canonical_polytope(rng, rng.choice([2, 3]))
            if not has_integral_vertices(polar_dual(p)):
                continue
            gp = good_pair_check(p, p)
            assert gp.is_good
            q1, q2 = dual_pair(p, p)
            assert good_pair_check(q1, q2).is_good
            found += 1


class TestDualityReport:
    def test_newton_pair_report(self, newton_polytope_pair):
        p1, p2 = newton_polytope_pair
        primal, dual = duality_qs_report(p1, p2)
        assert primal.quasismooth
        assert not dual.quasismooth
        assert dual.failure.reason.value == "all_faces_empty"
        assert len(dual.failure.stratum) == 4

    def test_dual_system_matches_reference_monomials(
        self, newton_polytope_pair, dual8_system
    ):
        p1, p2 = newton_polytope_pair
        q1, q2 = dual_pair(p1, p2)
        ind = induced_system(q1, q2)
        assert ind.system.num_monomials == 6
        verts = ind.system.vertex_exponents()
        assert len(verts) == 5
        assert rows_match_up_to_column_permutation(
            dual8_system.exponents, verts, 8
        )

    def test_self_dual_fermat_pair(self):
        primal, dual = duality_qs_report(PLANE_ANTICANONICAL, PLANE_ANTICANONICAL)
        assert primal.quasismooth and dual.quasismooth

    def test_induced_degree_is_anticanonical(self, newton_polytope_pair):
        p1, p2 = newton_polytope_pair
        ind = induced_system(p1, p2)
        all_ones = tuple(1 for _ in range(ind.system.num_vars))
        assert ind.system.degree == ind.ambient.grading.degree_of(all_ones)


class TestQuasismoothImpliesGood:
    def test_fixture_pair(self, newton_polytope_pair):
        p1, p2 = newton_polytope_pair
        assert quasismooth_implies_good(p1, p2)

    def test_boundary_origin_vacuous(self):
        p1 = hull([(0, 0), (2, -1), (-1, 2)])
        # origin is a vertex of the candidate: the induced system cannot be
        # quasismooth, so the implication holds vacuously
        assert not is_canonical(p1)
        ind = induced_system(p1, PLANE_ANTICANONICAL)
        assert not is_quasismooth(ind.system).quasismooth
        assert quasismooth_implies_good(p1, PLANE_ANTICANONICAL)

    def test_random_subpolytopes_of_product_anticanonical(self, newton_polytope_pair):
        _, p2 = newton_polytope_pair
        rng = random.Random(55)
        points = lattice_points(p2)
        for _ in range(20):
            size = rng.randint(1, len(points))
            subset = rng.sample(points, size)
            p1 = hull(subset)
            if not p1.is_full_dim:
                continue
            assert quasismooth_implies_good(p1, p2)
