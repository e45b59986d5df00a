import math

import numpy as np
import pytest

from toftrack import (AmbientCondition, CalibrationModel, Circle,
                      DegenerateScaleFitWarning, NoiseModel, NoTargetError,
                      Point2D, Scene, ZoneFrame, apply_calibration,
                      cast_zone_rays, distance, estimate_position,
                      fit_calibration, load_calibration, min_valid_reading,
                      save_calibration, scan)
from toftrack.datasets import load_exp2
from toftrack.experiments import DEFAULT_TARGET_POSITIONS, default_rig

RIG = default_rig()
BASELINE = RIG.baseline


def noiseless_frames(target: Point2D):
    scene = Scene(walls=RIG.walls, target=Circle(center=target, radius=RIG.target_radius))
    return cast_zone_rays(RIG.sensor_a, scene), cast_zone_rays(RIG.sensor_b, scene)


class TestMinValidReading:
    def test_takes_minimum(self):
        frame = ZoneFrame(readings=np.array([[500.0, 466.0], [480.0, math.nan]]),
                          max_range_mm=1000.0)
        assert min_valid_reading(frame) == 466.0

    def test_all_invalid_raises(self):
        frame = ZoneFrame(readings=np.full((2, 2), math.nan), max_range_mm=1000.0)
        with pytest.raises(NoTargetError):
            min_valid_reading(frame)

    def test_noiseless_scan_of_marked_position(self):
        frame_a, _ = noiseless_frames(Point2D(330.0, 330.0))
        assert min_valid_reading(frame_a) == pytest.approx(416.690, abs=1e-3)

    def test_bounds_every_valid_reading(self):
        rng = np.random.default_rng(4)
        readings = rng.uniform(10.0, 900.0, size=(4, 4))
        readings[0, 0] = math.nan
        frame = ZoneFrame(readings=readings, max_range_mm=1000.0)
        m = min_valid_reading(frame)
        assert np.all(readings[~np.isnan(readings)] >= m)


class TestEstimatePosition:
    def test_raw_estimate_sits_on_near_surface(self):
        target = Point2D(330.0, 330.0)
        frame_a, frame_b = noiseless_frames(target)
        est = estimate_position(frame_a, frame_b, BASELINE)
        # both ranges fall short of the center by about one radius
        for sensor, rng_used in ((BASELINE.s1, est.range_a), (BASELINE.s2, est.range_b)):
            shortfall = distance(target, sensor) - rng_used
            assert 0.0 <= shortfall <= RIG.target_radius + 1.0
        assert distance(est.position, target) > 10.0  # visibly biased

    def test_radius_compensation_recovers_center(self):
        for target in DEFAULT_TARGET_POSITIONS:
            frame_a, frame_b = noiseless_frames(target)
            est = estimate_position(frame_a, frame_b, BASELINE,
                                    radius_compensation=RIG.target_radius)
            assert distance(est.position, target) < 5.0

    def test_identity_calibration_is_noop(self):
        frame_a, frame_b = noiseless_frames(Point2D(330.0, 330.0))
        plain = estimate_position(frame_a, frame_b, BASELINE)
        ident = estimate_position(frame_a, frame_b, BASELINE,
                                  calibration=CalibrationModel())
        assert plain.position == ident.position

    def test_range_contract(self):
        frame_a, frame_b = noiseless_frames(Point2D(660.0, 330.0))
        est = estimate_position(frame_a, frame_b, BASELINE, radius_compensation=50.0)
        assert distance(est.position, BASELINE.s1) == pytest.approx(est.range_a, rel=1e-6)
        assert distance(est.position, BASELINE.s2) == pytest.approx(est.range_b, rel=1e-6)

    def test_propagates_no_target(self):
        empty = ZoneFrame(readings=np.full((4, 4), math.nan), max_range_mm=1000.0)
        frame_a, _ = noiseless_frames(Point2D(330.0, 330.0))
        with pytest.raises(NoTargetError):
            estimate_position(frame_a, empty, BASELINE)


class TestFitCalibration:
    def test_zero_residual_gives_identity(self):
        pts = [Point2D(100.0, 200.0), Point2D(300.0, 50.0), Point2D(40.0, 70.0)]
        model = fit_calibration([(p, p) for p in pts])
        assert model == CalibrationModel()

    def test_single_pair_offset(self):
        model = fit_calibration([(Point2D(100.0, 100.0), Point2D(110.0, 95.0))])
        assert model.offset_x == pytest.approx(10.0)
        assert model.offset_y == pytest.approx(-5.0)
        assert model.scale_x == 1.0 and model.scale_y == 1.0

    def test_offset_equals_mean_residual_on_recorded_data(self):
        table = load_exp2()
        pairs = [(p, pos.actual) for pos in table.positions for p in pos.trials]
        model = fit_calibration(pairs)
        # oracle: mean residual per axis computed directly from the table
        dx = [pos.actual.x - p.x for pos in table.positions for p in pos.trials]
        dy = [pos.actual.y - p.y for pos in table.positions for p in pos.trials]
        assert model.offset_x == pytest.approx(sum(dx) / len(dx), abs=1e-12)
        assert model.offset_y == pytest.approx(sum(dy) / len(dy), abs=1e-12)
        assert model.offset_x == pytest.approx(9.5, abs=1e-9)
        assert model.offset_y == pytest.approx(6.4, abs=1e-9)

    def test_affine_recovers_linear_transform(self):
        rng = np.random.default_rng(1)
        est = [Point2D(float(x), float(y)) for x, y in rng.uniform(0, 1000, (30, 2))]
        act = [Point2D(1.05 * p.x + 12.0, 0.97 * p.y - 8.0) for p in est]
        model = fit_calibration(list(zip(est, act)), mode="affine")
        assert model.scale_x == pytest.approx(1.05, abs=1e-9)
        assert model.offset_x == pytest.approx(12.0, abs=1e-6)
        assert model.scale_y == pytest.approx(0.97, abs=1e-9)
        assert model.offset_y == pytest.approx(-8.0, abs=1e-6)

    def test_affine_needs_distinct_actuals(self):
        pairs = [(Point2D(1.0, 2.0), Point2D(5.0, 5.0)),
                 (Point2D(2.0, 3.0), Point2D(5.0, 5.0))]
        with pytest.raises(ValueError):
            fit_calibration(pairs, mode="affine")

    def test_degenerate_scale_falls_back_with_warning(self):
        pairs = [(Point2D(100.0, 1.0), Point2D(110.0, 2.0)),
                 (Point2D(100.0, 2.0), Point2D(130.0, 4.0))]
        with pytest.warns(DegenerateScaleFitWarning):
            model = fit_calibration(pairs, mode="affine")
        assert model.scale_x == 1.0
        assert model.offset_x == pytest.approx(20.0)

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            fit_calibration([])

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            fit_calibration([(Point2D(0, 0), Point2D(1, 1))], mode="spline")


class TestApplyCalibration:
    def test_identity(self):
        p = Point2D(123.0, -45.0)
        assert apply_calibration(p, CalibrationModel()) == p

    def test_offsets(self):
        out = apply_calibration(Point2D(100.0, 200.0),
                                CalibrationModel(offset_x=10.0, offset_y=-20.0))
        assert out == Point2D(110.0, 180.0)

    def test_fit_never_increases_squared_residuals(self):
        rng = np.random.default_rng(9)
        for mode in ("offset", "affine"):
            est = [Point2D(float(x), float(y)) for x, y in rng.uniform(0, 1000, (25, 2))]
            act = [Point2D(p.x + float(rng.normal(20, 5)), p.y + float(rng.normal(-10, 5)))
                   for p in est]
            model = fit_calibration(list(zip(est, act)), mode=mode)
            before = sum((a.x - e.x) ** 2 + (a.y - e.y) ** 2 for e, a in zip(est, act))
            cal = [apply_calibration(e, model) for e in est]
            after = sum((a.x - c.x) ** 2 + (a.y - c.y) ** 2 for c, a in zip(cal, act))
            assert after <= before + 1e-9

    def test_scale_must_be_positive(self):
        with pytest.raises(ValueError):
            CalibrationModel(scale_x=0.0)


class TestCalibrationIO:
    def test_round_trip(self, tmp_path):
        model = CalibrationModel(offset_x=9.5, offset_y=6.4,
                                 scale_x=1.01, scale_y=0.99)
        path = tmp_path / "model.cfg"
        save_calibration(model, path)
        assert load_calibration(path) == model

    def test_partial_file_uses_identity_defaults(self, tmp_path):
        path = tmp_path / "model.cfg"
        path.write_text("offset_y_mm=6.4\n")
        model = load_calibration(path)
        assert model == CalibrationModel(offset_y=6.4)


def test_noisy_pipeline_stays_near_target():
    # sanity: with the default noise model the estimate tracks the target
    target = Point2D(330.0, 330.0)
    scene = Scene(walls=RIG.walls, target=Circle(center=target, radius=50.0))
    model = NoiseModel()
    errs = []
    for seed in range(50):
        fa = scan(RIG.sensor_a, scene, model, AmbientCondition.DARK,
                  np.random.default_rng(seed))
        fb = scan(RIG.sensor_b, scene, model, AmbientCondition.DARK,
                  np.random.default_rng(seed + 10_000))
        try:
            est = estimate_position(fa, fb, BASELINE, radius_compensation=50.0)
        except Exception:
            continue
        errs.append(distance(est.position, target))
    assert len(errs) > 40
    assert np.median(errs) < 60.0
