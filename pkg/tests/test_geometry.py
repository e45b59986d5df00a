import math

import numpy as np
import pytest

from toftrack import (LEFT, RIGHT, Baseline, DegenerateTriangleError, Point2D,
                      TriangleRanges, distance, distance_from_time,
                      forward_distances, triangulate)
from toftrack.geometry import COS_CLAMP_TOLERANCE, SPEED_OF_LIGHT_M_PER_S

BASE = Baseline(Point2D(0.0, 0.0), Point2D(1000.0, 0.0))


class TestDistanceFromTime:
    def test_zero_time(self):
        assert distance_from_time(0.0) == 0.0

    def test_one_meter_round_trip(self):
        # 6.6713 ns round trip corresponds to one meter each way.
        assert distance_from_time(6.6713e-9) == pytest.approx(1000.0, abs=0.1)

    def test_doubling_time_doubles_distance_exactly(self):
        for t in (1e-12, 3.3356e-9, 2.5e-7, 1.0):
            assert distance_from_time(2.0 * t) == 2.0 * distance_from_time(t)

    def test_monotone(self):
        rng = np.random.default_rng(7)
        times = np.sort(rng.uniform(0.0, 1e-6, size=100))
        dists = [distance_from_time(float(t)) for t in times]
        assert all(b >= a for a, b in zip(dists, dists[1:]))

    def test_speed_of_light_value(self):
        assert SPEED_OF_LIGHT_M_PER_S == 299_792_458.0

    @pytest.mark.parametrize("t", [-1e-9, math.nan, math.inf])
    def test_rejects_bad_time(self, t):
        with pytest.raises(ValueError):
            distance_from_time(t)


class TestTriangulate:
    def test_isoceles_symmetry(self):
        p = triangulate(TriangleRanges(707.10678, 707.10678), BASE)
        assert p.x == pytest.approx(500.0, abs=1e-3)
        assert p.y == pytest.approx(500.0, abs=1e-3)

    def test_recovers_marked_position(self):
        # Ranges are sqrt(330^2 + 330^2) and sqrt(670^2 + 330^2), rounded to
        # the 3 decimals used when they were derived.
        p = triangulate(TriangleRanges(466.690, 746.860), BASE)
        assert p.x == pytest.approx(330.0, abs=1e-2)
        assert p.y == pytest.approx(330.0, abs=1e-2)

    def test_triangle_inequality_violation(self):
        with pytest.raises(DegenerateTriangleError):
            triangulate(TriangleRanges(100.0, 100.0), BASE)

    def test_side_selection_mirrors(self):
        ranges = TriangleRanges(466.690, 746.860)
        up = triangulate(ranges, BASE, side=LEFT)
        down = triangulate(ranges, BASE, side=RIGHT)
        assert up.x == pytest.approx(down.x, abs=1e-9)
        assert up.y == pytest.approx(-down.y, abs=1e-9)

    def test_bad_side_rejected(self):
        with pytest.raises(ValueError):
            triangulate(TriangleRanges(500.0, 500.0), BASE, side=2)

    def test_range_contract_random(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            target = Point2D(float(rng.uniform(0, 1000)), float(rng.uniform(1, 1000)))
            ranges = forward_distances(target, BASE)
            p = triangulate(ranges, BASE)
            assert distance(p, BASE.s1) == pytest.approx(ranges.a, rel=1e-6)
            assert distance(p, BASE.s2) == pytest.approx(ranges.b, rel=1e-6)

    def test_round_trip_property(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            target = Point2D(float(rng.uniform(0, 1000)), float(rng.uniform(1, 1000)))
            p = triangulate(forward_distances(target, BASE), BASE)
            assert distance(p, target) <= 1e-6 * max(1.0, math.hypot(target.x, target.y))

    def test_rigid_motion_equivariance(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            target = Point2D(float(rng.uniform(0, 1000)), float(rng.uniform(1, 1000)))
            ranges = forward_distances(target, BASE)
            p = triangulate(ranges, BASE)

            angle = float(rng.uniform(0, 2 * math.pi))
            tx, ty = rng.uniform(-5000, 5000, size=2)
            cos_a, sin_a = math.cos(angle), math.sin(angle)

            def move(q):
                return Point2D(cos_a * q.x - sin_a * q.y + tx,
                               sin_a * q.x + cos_a * q.y + ty)

            moved = triangulate(ranges, Baseline(move(BASE.s1), move(BASE.s2)))
            assert distance(moved, move(p)) <= 1e-6

    def test_near_collinear_clamps(self):
        # Target exactly on the baseline: cos argument is 1 up to rounding.
        p = triangulate(TriangleRanges(250.0, 750.0), BASE)
        assert p.x == pytest.approx(250.0, abs=1e-6)
        assert p.y == pytest.approx(0.0, abs=1e-3)

    def test_clamp_tolerance_boundary(self):
        # Construct cos arguments just inside and just beyond the clamp.
        a, c = 400.0, 1000.0
        for g, should_raise in ((1.0 + 0.5 * COS_CLAMP_TOLERANCE, False),
                                (1.0 + 50.0 * COS_CLAMP_TOLERANCE, True)):
            b = math.sqrt(a * a + c * c - 2.0 * a * c * g)
            cos_arg = (a * a + c * c - b * b) / (2.0 * a * c)
            if abs(cos_arg - 1.0) > 10.0 * COS_CLAMP_TOLERANCE and not should_raise:
                continue  # construction rounded too far to classify
            if should_raise:
                with pytest.raises(DegenerateTriangleError):
                    triangulate(TriangleRanges(a, b), BASE)
            else:
                p = triangulate(TriangleRanges(a, b), BASE)
                assert p.y == pytest.approx(0.0, abs=1e-2)


class TestForwardDistances:
    def test_reference_target(self):
        ranges = forward_distances(Point2D(330.0, 330.0), BASE)
        assert ranges.a == pytest.approx(math.sqrt(330.0**2 + 330.0**2), abs=1e-9)
        assert ranges.b == pytest.approx(math.sqrt(670.0**2 + 330.0**2), abs=1e-9)
        assert ranges.a == pytest.approx(466.690, abs=1e-3)
        assert ranges.b == pytest.approx(746.860, abs=1e-3)

    def test_collinear_midpoint(self):
        ranges = forward_distances(Point2D(500.0, 0.0), BASE)
        assert ranges.a == 500.0
        assert ranges.b == 500.0

    def test_coincident_with_sensor(self):
        with pytest.raises(ValueError):
            forward_distances(Point2D(0.0, 0.0), BASE)


class TestTypes:
    @pytest.mark.parametrize("x,y", [(math.nan, 0.0), (0.0, math.inf), (-math.inf, 1.0)])
    def test_point_must_be_finite(self, x, y):
        with pytest.raises(ValueError):
            Point2D(x, y)

    def test_baseline_needs_distinct_sensors(self):
        with pytest.raises(ValueError):
            Baseline(Point2D(1.0, 2.0), Point2D(1.0, 2.0))

    @pytest.mark.parametrize("a,b", [(0.0, 1.0), (1.0, -2.0), (math.nan, 1.0), (1.0, math.inf)])
    def test_ranges_positive_finite(self, a, b):
        with pytest.raises(ValueError):
            TriangleRanges(a, b)
