"""Position estimation from a pair of zone frames.

Each sensor's scan is collapsed to its lowest valid reading, the two
minima plus the baseline are triangulated, and an optional affine
calibration corrects systematic bias. The minimum rule means a raw
estimate lands on the target surface facing the sensors, not the center;
`radius_compensation` adds the cylinder radius back to each range to
approximate the center.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .geometry import LEFT, Baseline, Point2D, TriangleRanges, triangulate
from .sensor import ZoneFrame


class NoTargetError(RuntimeError):
    """Every zone of a frame was INVALID: nothing in view."""


class DegenerateScaleFitWarning(UserWarning):
    """Scale fitting was impossible (no spread in the estimates); fell back to offset-only."""


@dataclass(frozen=True)
class TrackEstimate:
    """A triangulated position plus the two ranges that produced it."""

    position: Point2D
    range_a: float
    range_b: float


@dataclass(frozen=True)
class CalibrationModel:
    """Per-axis affine correction: calibrated = scale * raw + offset."""

    offset_x: float = 0.0
    offset_y: float = 0.0
    scale_x: float = 1.0
    scale_y: float = 1.0

    def __post_init__(self):
        if self.scale_x <= 0.0 or self.scale_y <= 0.0:
            raise ValueError("scale factors must be > 0")


IDENTITY_CALIBRATION = CalibrationModel()


def min_valid_reading(frame: ZoneFrame) -> float:
    """The lowest valid distance in the frame, mm."""
    valid = frame.readings[frame.valid_mask]
    if valid.size == 0:
        raise NoTargetError("all zones INVALID: target left the field of view")
    return float(valid.min())


def estimate_position(frame_a: ZoneFrame, frame_b: ZoneFrame, baseline: Baseline,
                      radius_compensation: float = 0.0,
                      calibration: CalibrationModel | None = None,
                      side: int = LEFT) -> TrackEstimate:
    """Triangulate the target from one frame per sensor.

    `side` fixes which half-plane of the baseline the rig interior is on.
    Raises NoTargetError if either frame is empty and propagates
    DegenerateTriangleError from inconsistent ranges.
    """
    a = min_valid_reading(frame_a) + radius_compensation
    b = min_valid_reading(frame_b) + radius_compensation
    position = triangulate(TriangleRanges(a=a, b=b), baseline, side=side)
    if calibration is not None:
        position = apply_calibration(position, calibration)
    return TrackEstimate(position=position, range_a=a, range_b=b)


def apply_calibration(p: Point2D, model: CalibrationModel) -> Point2D:
    return Point2D(model.scale_x * p.x + model.offset_x,
                   model.scale_y * p.y + model.offset_y)


def fit_calibration(pairs: list[tuple[Point2D, Point2D]],
                    mode: str = "offset") -> CalibrationModel:
    """Least-squares fit of actual ~ scale * estimated + offset, per axis.

    `pairs` holds (estimated, actual) points. The default "offset" mode
    fixes both scales at 1, so each offset is the mean residual on its
    axis; "affine" also fits the scales and needs at least two distinct
    actual values per axis. A zero-variance axis cannot support a scale
    fit; it falls back to offset-only and emits DegenerateScaleFitWarning.
    """
    if mode not in ("offset", "affine"):
        raise ValueError(f"mode must be 'offset' or 'affine', got {mode!r}")
    if not pairs:
        raise ValueError("at least one (estimated, actual) pair is required")

    est = np.array([(e.x, e.y) for e, _ in pairs], dtype=float)
    act = np.array([(a.x, a.y) for _, a in pairs], dtype=float)

    if mode == "offset":
        off = (act - est).mean(axis=0)
        return CalibrationModel(offset_x=float(off[0]), offset_y=float(off[1]))

    scales = [1.0, 1.0]
    offsets = [0.0, 0.0]
    for axis, name in ((0, "x"), (1, "y")):
        if np.unique(act[:, axis]).size < 2:
            raise ValueError(
                f"affine fit needs >= 2 distinct actual values on the {name} axis"
            )
        spread = est[:, axis].std()
        if spread == 0.0:
            warnings.warn(
                f"no spread in estimated {name} values; fitted offset only",
                DegenerateScaleFitWarning,
            )
            offsets[axis] = float(act[:, axis].mean() - est[:, axis].mean())
            continue
        scale, offset = np.polyfit(est[:, axis], act[:, axis], 1)
        scales[axis] = float(scale)
        offsets[axis] = float(offset)
    return CalibrationModel(offset_x=offsets[0], offset_y=offsets[1],
                            scale_x=scales[0], scale_y=scales[1])


def save_calibration(model: CalibrationModel, path) -> None:
    """Write a model as the line-oriented key=value text format."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"offset_x_mm={model.offset_x!r}\n")
        fh.write(f"offset_y_mm={model.offset_y!r}\n")
        fh.write(f"scale_x={model.scale_x!r}\n")
        fh.write(f"scale_y={model.scale_y!r}\n")


def load_calibration(path) -> CalibrationModel:
    """Read a model written by save_calibration."""
    from .config import read_key_values

    values = read_key_values(path, allowed_keys={
        "offset_x_mm", "offset_y_mm", "scale_x", "scale_y"})
    def get(key, default):
        return float(values.get(key, default))
    model = CalibrationModel(
        offset_x=get("offset_x_mm", 0.0),
        offset_y=get("offset_y_mm", 0.0),
        scale_x=get("scale_x", 1.0),
        scale_y=get("scale_y", 1.0),
    )
    return model
