"""Core metric/cross predicate tests, including independent oracles."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betaskel.errors import InputError
from betaskel.geometry import (
    CORE,
    Arm,
    Direction,
    Metric,
    Point,
    PointSet,
    cross_arms,
    cross_directions,
    dist,
    in_cross,
    in_shortest_path_set,
    midpoint,
    sphere_union_decomposition_check,
)
from conftest import line_min_pair_distance_sum, random_pair

coord = st.integers(min_value=-100, max_value=100).map(float)


def vec(dim: int):
    return st.tuples(*([coord] * dim))


class TestDistance:
    def test_l1_example(self):
        assert dist((0, 0, 0), (4, 2, 1), Metric.L1) == 7

    def test_linf_example(self):
        assert dist((0, 0, 0), (4, 2, 1), Metric.LINF) == 4

    def test_identity(self):
        assert dist((3, -2), (3, -2), Metric.L1) == 0
        assert dist((3, -2), (3, -2), Metric.LINF) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            dist((0, 0), (1, 2, 3), Metric.L1)

    @given(vec(3), vec(3), vec(3), st.sampled_from(list(Metric)))
    @settings(max_examples=200, deadline=None)
    def test_metric_axioms(self, p, q, r, metric):
        assert dist(p, q, metric) == dist(q, p, metric)
        assert dist(p, q, metric) >= 0
        assert (dist(p, q, metric) == 0) == (p == q)
        assert dist(p, r, metric) <= dist(p, q, metric) + dist(q, r, metric) + 1e-12


class TestShortestPathSet:
    def test_midpoint_always_member(self):
        for metric in Metric:
            assert in_shortest_path_set(midpoint((0, 0, 0), (4, 2, 1)), (0, 0, 0), (4, 2, 1), metric)

    def test_l1_examples(self):
        assert in_shortest_path_set((4, 0, 0), (0, 0, 0), (4, 2, 1), Metric.L1)
        assert not in_shortest_path_set((5, 0, 0), (0, 0, 0), (4, 2, 1), Metric.L1)

    def test_degenerate_pair_rejected(self):
        with pytest.raises(ValueError):
            in_shortest_path_set((0, 0), (1, 1), (1, 1), Metric.L1)

    def test_l1_set_is_bounding_box_grid_scan(self):
        # independent oracle: under L1 the set must equal coordinate-wise
        # betweenness; scan a whole integer grid around the pair
        v1, v2 = (1.0, 4.0, 2.0), (5.0, 2.0, 2.0)
        for p in itertools.product(range(-1, 8), repeat=3):
            expected = all(min(a, b) <= x <= max(a, b) for x, a, b in zip(p, v1, v2))
            assert in_shortest_path_set(p, v1, v2, Metric.L1) == expected

    def test_linf_set_contains_diagonal_segment_beyond_box(self):
        # Linf shortest paths are not confined to the bounding box: from
        # (0,0) to (4,2) the point (1,-1) still lies on a shortest path.
        assert in_shortest_path_set((1, -1), (0, 0), (4, 2), Metric.LINF)
        assert not in_shortest_path_set((1, -1), (0, 0), (4, 2), Metric.L1)

    @pytest.mark.parametrize("metric", list(Metric))
    def test_invariances(self, metric):
        rng = random.Random(7)
        for _ in range(200):
            v1, v2 = random_pair(rng, 3)
            p = tuple(float(rng.randint(-25, 25)) for _ in range(3))
            base = in_shortest_path_set(p, v1, v2, metric)
            shift = tuple(float(rng.randint(-9, 9)) for _ in range(3))
            tr = lambda q: tuple(a + s for a, s in zip(q, shift))
            assert in_shortest_path_set(tr(p), tr(v1), tr(v2), metric) == base
            perm = [0, 1, 2]
            rng.shuffle(perm)
            pm = lambda q: tuple(q[i] for i in perm)
            assert in_shortest_path_set(pm(p), pm(v1), pm(v2), metric) == base
            s = rng.choice([0.5, 2.0, 3.0])
            sc = lambda q: tuple(a * s for a in q)
            assert in_shortest_path_set(sc(p), sc(v1), sc(v2), metric) == base

    @pytest.mark.parametrize("metric", list(Metric))
    @pytest.mark.parametrize("dim", [2, 3])
    def test_sphere_union_decomposition(self, metric, dim):
        rng = random.Random(11)
        for _ in range(20):
            v1, v2 = random_pair(rng, dim)
            assert sphere_union_decomposition_check(v1, v2, metric, samples=200, seed=rng.randint(0, 10**6))


class TestCrossDirections:
    def test_counts(self):
        assert len(cross_directions(2, Metric.LINF)) == 2
        assert len(cross_directions(3, Metric.LINF)) == 4
        assert len(cross_directions(2, Metric.L1)) == 2
        assert len(cross_directions(3, Metric.L1)) == 3

    def test_linf_d3_exact(self):
        signs = [d.signs for d in cross_directions(3, Metric.LINF)]
        assert signs == [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)]

    def test_dim_below_two_rejected(self):
        with pytest.raises(ValueError):
            cross_directions(1, Metric.L1)

    def test_direction_validation(self):
        with pytest.raises(ValueError):
            Direction()
        with pytest.raises(ValueError):
            Direction(signs=(1, 1), axis=0)
        with pytest.raises(ValueError):
            Direction(signs=(-1, 1))


class TestInCross:
    def test_core(self):
        assert in_cross((1, 0.5), (0, 0), (2, 1), Metric.L1) == CORE
        assert in_cross((1, 0.5), (0, 0), (2, 1), Metric.LINF) == CORE

    def test_l1_axis_arm_example(self):
        res = in_cross((5, 0.5), (0, 0), (2, 1), Metric.L1)
        assert res == Arm(Direction(axis=0), "+")

    def test_l1_absent_example(self):
        assert in_cross((5, 3), (0, 0), (2, 1), Metric.L1) is None

    def test_sides_mirror(self):
        assert in_cross((-3, 0.5), (0, 0), (2, 1), Metric.L1) == Arm(Direction(axis=0), "-")
        assert in_cross((1, 9), (0, 0), (2, 1), Metric.L1) == Arm(Direction(axis=1), "+")

    def test_linf_diagonal_arm(self):
        # (3,-2) is Linf-equidistant (R=3) from (0,0) and (2,1); it lies on
        # the (+,-) diagonal arm, plus side (worked through by hand).
        res = in_cross((3, -2), (0, 0), (2, 1), Metric.LINF)
        assert res == Arm(Direction(signs=(1, -1)), "+")
        res = in_cross((-1, 3), (0, 0), (2, 1), Metric.LINF)
        assert res == Arm(Direction(signs=(1, -1)), "-")

    @pytest.mark.parametrize("metric", list(Metric))
    @pytest.mark.parametrize("dim", [2, 3])
    def test_membership_matches_line_minimization_oracle(self, metric, dim):
        # independent oracle: p is on the arm of direction `vec` iff the
        # line through p with that direction reaches S(v1,v2), i.e. the
        # minimum over the line of d(v1,.)+d(.,v2) equals d(v1,v2).
        rng = random.Random(23)
        for _ in range(300):
            v1, v2 = random_pair(rng, dim, span=8)
            p = tuple(float(rng.randint(-20, 20)) for _ in range(dim))
            d = dist(v1, v2, metric)
            member = {
                (a.direction.signs or a.direction.axis): a.side for a in cross_arms(p, v1, v2, metric)
            }
            for direction in cross_directions(dim, metric):
                if metric is Metric.LINF:
                    vec_t = direction.signs
                    key = direction.signs
                else:
                    vec_t = tuple(1.0 if i == direction.axis else 0.0 for i in range(dim))
                    key = direction.axis
                best = line_min_pair_distance_sum(p, v1, v2, vec_t, metric)
                assert (key in member) == (best <= d + 1e-9), (p, v1, v2, direction)

    def test_core_points_belong_to_every_direction(self):
        arms = cross_arms((1, 0.5), (0, 0), (2, 1), Metric.LINF)
        assert [a.side for a in arms] == [None, None]


class TestPointSet:
    def test_from_coords_auto_ids(self):
        ps = PointSet.from_coords([(0, 0), (1, 2), (3, 1)])
        assert ps.ids() == [0, 1, 2]
        assert ps.dim == 2

    def test_duplicate_coords_rejected(self):
        with pytest.raises(InputError):
            PointSet.from_coords([(0, 0), (1, 1), (0, 0)])

    def test_duplicate_ids_rejected(self):
        with pytest.raises(InputError):
            PointSet([Point(1, (0.0, 0.0)), Point(1, (1.0, 1.0))])

    def test_dimension_consistency(self):
        with pytest.raises(InputError):
            PointSet([Point(0, (0.0, 0.0)), Point(1, (1.0, 1.0, 2.0))])

    def test_dim_one_rejected(self):
        with pytest.raises(InputError):
            PointSet.from_coords([(0.0,), (1.0,)])

    def test_negative_id_rejected(self):
        with pytest.raises(InputError):
            PointSet([Point(-1, (0.0, 0.0)), Point(0, (1.0, 1.0))])
