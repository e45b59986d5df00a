"""Line-oriented key=value configuration files.

A rig file describes sensor one, the optics shared by both sensors, the
noise model, the target, and the frame. Sensor two is not listed: the
rig mounts the sensors in adjacent corners, so it mirrors sensor one
across the frame's vertical midline (yaw reflected likewise). Blank
lines and '#' comments are ignored; any key outside the documented set
is an error.

Documented keys (all optional, shown with defaults):

    sensor1.x = 0.0                 mm
    sensor1.y = 0.0                 mm
    sensor1.yaw_deg = 45.0
    fov_deg = 60.0
    zones = 4
    max_range_mm = 4000.0
    noise.sigma0_mm = 5.0
    noise.sigma_slope = 10.0        mm of std dev per meter of range
    noise.outlier_prob = 0.02
    noise.outlier_max_mm = 150.0
    noise.ambient_multiplier = 2.0
    target.radius_mm = 50.0
    frame.size_mm = 1000.0
    seed = 0
"""

from __future__ import annotations

from dataclasses import dataclass

from .experiments import Rig, frame_walls
from .geometry import Point2D
from .sensor import NoiseModel, SensorConfig


class ConfigError(ValueError):
    """Malformed configuration file; message names the offending line."""


RIG_KEYS = frozenset({
    "sensor1.x", "sensor1.y", "sensor1.yaw_deg",
    "fov_deg", "zones", "max_range_mm",
    "noise.sigma0_mm", "noise.sigma_slope", "noise.outlier_prob",
    "noise.outlier_max_mm", "noise.ambient_multiplier",
    "target.radius_mm", "frame.size_mm", "seed",
})


@dataclass(frozen=True)
class SimulationSetup:
    """A fully resolved rig plus the noise model and seed it was filed with."""

    rig: Rig
    noise: NoiseModel
    seed: int


def read_key_values(path, allowed_keys=None) -> dict[str, str]:
    """Parse a key=value file into a dict, rejecting unknown keys."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if allowed_keys is not None and key not in allowed_keys:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            if key in values:
                raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
            values[key] = value
    return values


def _as_float(values: dict[str, str], key: str, default: float, path) -> float:
    if key not in values:
        return default
    try:
        return float(values[key])
    except ValueError:
        raise ConfigError(f"{path}: key {key!r} is not a number: {values[key]!r}") from None


def _as_int(values: dict[str, str], key: str, default: int, path) -> int:
    if key not in values:
        return default
    try:
        return int(values[key])
    except ValueError:
        raise ConfigError(f"{path}: key {key!r} is not an integer: {values[key]!r}") from None


def load_rig_config(path) -> SimulationSetup:
    """Build the two-sensor rig described by a key=value file."""
    values = read_key_values(path, allowed_keys=RIG_KEYS)

    frame_size = _as_float(values, "frame.size_mm", 1000.0, path)
    s1 = Point2D(_as_float(values, "sensor1.x", 0.0, path),
                 _as_float(values, "sensor1.y", 0.0, path))
    yaw1 = _as_float(values, "sensor1.yaw_deg", 45.0, path)
    fov = _as_float(values, "fov_deg", 60.0, path)
    zones = _as_int(values, "zones", 4, path)
    max_range = _as_float(values, "max_range_mm", 4000.0, path)

    # Sensor two mirrors sensor one across the frame's vertical midline.
    s2 = Point2D(frame_size - s1.x, s1.y)
    yaw2 = 180.0 - yaw1
    try:
        sensor1 = SensorConfig(position=s1, yaw_deg=yaw1, fov_deg=fov,
                               zones_per_side=zones, max_range_mm=max_range)
        sensor2 = SensorConfig(position=s2, yaw_deg=yaw2, fov_deg=fov,
                               zones_per_side=zones, max_range_mm=max_range)
        noise = NoiseModel(
            sigma0=_as_float(values, "noise.sigma0_mm", 5.0, path),
            sigma_slope=_as_float(values, "noise.sigma_slope", 10.0, path),
            outlier_prob=_as_float(values, "noise.outlier_prob", 0.02, path),
            outlier_shortening_max=_as_float(values, "noise.outlier_max_mm", 150.0, path),
            ambient_multiplier=_as_float(values, "noise.ambient_multiplier", 2.0, path),
        )
        radius = _as_float(values, "target.radius_mm", 50.0, path)
        if radius <= 0.0:
            raise ValueError(f"target.radius_mm must be > 0, got {radius}")
        if s1.x == s2.x and s1.y == s2.y:
            raise ValueError("sensor positions coincide; move sensor1 off the midline")
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    # The interior is the side of the s1->s2 line holding the frame center.
    center = Point2D(frame_size / 2.0, frame_size / 2.0)
    cross = ((s2.x - s1.x) * (center.y - s1.y)
             - (s2.y - s1.y) * (center.x - s1.x))
    interior_side = 1 if cross >= 0.0 else -1

    rig = Rig(sensor_a=sensor1, sensor_b=sensor2,
              walls=frame_walls(frame_size), target_radius=radius,
              interior_side=interior_side)
    return SimulationSetup(rig=rig, noise=noise,
                           seed=_as_int(values, "seed", 0, path))
