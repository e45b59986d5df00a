"""Multi-zone infrared time-of-flight sensor simulator.

The sensor is modeled as a square grid of detection zones sweeping a
horizontal slice of the scene. Each grid column owns one ray direction
inside the field of view; the tracked cylinder is vertical, so every row
of a column shares the same noiseless distance and rows differ only by
independent noise. Readings are millimeters; zones that hit nothing within
range carry the INVALID sentinel (NaN).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import Point2D

# Sentinel for a zone that detected nothing (math.nan; compare via isnan).
INVALID = math.nan

# Readings are clamped into (0, max_range]; this is the positive floor.
MIN_READING_MM = 1e-6

# Intersections closer than this are treated as the ray grazing its own
# origin (e.g. a wall ending at the sensor corner) and ignored.
_SELF_HIT_EPS = 1e-9


class AmbientCondition(enum.Enum):
    """Lighting regime the scan runs under."""

    DARK = "dark"
    ARTIFICIAL_LIGHT = "lit"


@dataclass(frozen=True)
class SensorConfig:
    """Pose and optics of one sensor.

    `yaw_deg` is the boresight azimuth (counterclockwise from +x),
    `fov_deg` the total horizontal field of view, and the zone grid is
    zones_per_side x zones_per_side.
    """

    position: Point2D
    yaw_deg: float
    fov_deg: float = 60.0
    zones_per_side: int = 4
    max_range_mm: float = 4000.0

    def __post_init__(self):
        if not 0.0 < self.fov_deg < 180.0:
            raise ValueError(f"fov_deg must be in (0, 180), got {self.fov_deg}")
        if self.zones_per_side < 1:
            raise ValueError(f"zones_per_side must be >= 1, got {self.zones_per_side}")
        if self.max_range_mm <= 0.0:
            raise ValueError(f"max_range_mm must be > 0, got {self.max_range_mm}")

    def column_azimuths_deg(self) -> np.ndarray:
        """Azimuth of each grid column's ray, degrees, left edge first."""
        n = self.zones_per_side
        step = self.fov_deg / n
        first = self.yaw_deg - self.fov_deg / 2.0 + 0.5 * step
        return first + step * np.arange(n)


@dataclass(frozen=True)
class NoiseModel:
    """Stochastic error model for one zone reading.

    A valid reading d gains Gaussian noise with std dev
    sigma0 + sigma_slope * d / 1000 (slope is mm of noise per meter of
    range). Independently, with probability outlier_prob the reading is
    instead shortened by a uniform draw in [0, outlier_shortening_max]:
    stray ambient photons can only stop the timing clock early, so
    outliers never lengthen a reading. Under artificial light both sigma
    and the outlier probability are multiplied by ambient_multiplier.
    """

    sigma0: float = 5.0
    sigma_slope: float = 10.0
    outlier_prob: float = 0.02
    outlier_shortening_max: float = 150.0
    ambient_multiplier: float = 2.0

    def __post_init__(self):
        if self.sigma0 < 0.0 or self.sigma_slope < 0.0:
            raise ValueError("sigma0 and sigma_slope must be >= 0")
        if not 0.0 <= self.outlier_prob <= 1.0:
            raise ValueError(f"outlier_prob must be in [0, 1], got {self.outlier_prob}")
        if self.outlier_shortening_max < 0.0:
            raise ValueError("outlier_shortening_max must be >= 0")
        if self.ambient_multiplier < 1.0:
            raise ValueError(
                f"ambient_multiplier must be >= 1, got {self.ambient_multiplier}"
            )

    @staticmethod
    def noiseless() -> "NoiseModel":
        return NoiseModel(sigma0=0.0, sigma_slope=0.0, outlier_prob=0.0,
                          outlier_shortening_max=0.0, ambient_multiplier=1.0)


@dataclass(frozen=True)
class Segment:
    """A wall: straight segment between two endpoints, mm."""

    p: Point2D
    q: Point2D


@dataclass(frozen=True)
class Circle:
    """The tracked cylinder's horizontal cross-section, mm."""

    center: Point2D
    radius: float

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError(f"radius must be > 0, got {self.radius}")


@dataclass(frozen=True)
class Scene:
    """Static walls plus the movable circular target."""

    walls: tuple[Segment, ...]
    target: Circle


@dataclass(frozen=True, eq=False)
class ZoneFrame:
    """One scan: a zones x zones grid of distances (mm) with NaN = INVALID."""

    readings: np.ndarray
    max_range_mm: float

    def __post_init__(self):
        r = np.asarray(self.readings, dtype=float)
        if r.ndim != 2 or r.shape[0] != r.shape[1]:
            raise ValueError(f"readings must be a square grid, got shape {r.shape}")
        valid = r[~np.isnan(r)]
        if valid.size and (np.any(valid <= 0.0) or np.any(valid > self.max_range_mm)):
            raise ValueError("valid readings must lie in (0, max_range_mm]")
        object.__setattr__(self, "readings", r)

    @property
    def valid_mask(self) -> np.ndarray:
        return ~np.isnan(self.readings)


def ray_circle_distance(origin: Point2D, azimuth_rad: float, circle: Circle) -> float | None:
    """Distance to the nearest circle intersection along the ray, or None."""
    dx, dy = math.cos(azimuth_rad), math.sin(azimuth_rad)
    mx, my = circle.center.x - origin.x, circle.center.y - origin.y
    proj = mx * dx + my * dy
    disc = circle.radius * circle.radius - (mx * mx + my * my - proj * proj)
    if disc < 0.0:
        return None
    root = math.sqrt(disc)
    near, far = proj - root, proj + root
    if near > _SELF_HIT_EPS:
        return near
    if far > _SELF_HIT_EPS:  # ray starts inside the circle
        return far
    return None


def ray_segment_distance(origin: Point2D, azimuth_rad: float, seg: Segment) -> float | None:
    """Distance to the segment along the ray, or None if it misses."""
    dx, dy = math.cos(azimuth_rad), math.sin(azimuth_rad)
    ex, ey = seg.q.x - seg.p.x, seg.q.y - seg.p.y
    denom = dx * ey - dy * ex
    if abs(denom) < 1e-15:  # parallel
        return None
    wx, wy = seg.p.x - origin.x, seg.p.y - origin.y
    t = (wx * ey - wy * ex) / denom  # distance along the ray
    s = (wx * dy - wy * dx) / denom  # position along the segment
    if t > _SELF_HIT_EPS and 0.0 <= s <= 1.0:
        return t
    return None


def cast_zone_rays(config: SensorConfig, scene: Scene) -> ZoneFrame:
    """Noiseless forward model: nearest hit per column, broadcast to rows."""
    n = config.zones_per_side
    column_values = np.full(n, INVALID)
    for i, az_deg in enumerate(config.column_azimuths_deg()):
        az = math.radians(az_deg)
        best = None
        hit = ray_circle_distance(config.position, az, scene.target)
        if hit is not None:
            best = hit
        for wall in scene.walls:
            hit = ray_segment_distance(config.position, az, wall)
            if hit is not None and (best is None or hit < best):
                best = hit
        if best is not None and best <= config.max_range_mm:
            column_values[i] = best
    readings = np.tile(column_values, (n, 1))
    return ZoneFrame(readings=readings, max_range_mm=config.max_range_mm)


def apply_noise(frame: ZoneFrame, model: NoiseModel, condition: AmbientCondition,
                rng: np.random.Generator) -> ZoneFrame:
    """Perturb a frame's valid readings; INVALID zones stay INVALID.

    Deterministic for a given generator state: draws are made for every
    grid cell in a fixed order regardless of validity.
    """
    readings = frame.readings
    shape = readings.shape
    gauss = rng.normal(size=shape)
    outlier_draw = rng.random(size=shape)
    shortening = rng.uniform(0.0, model.outlier_shortening_max, size=shape) \
        if model.outlier_shortening_max > 0.0 else np.zeros(shape)

    mult = model.ambient_multiplier if condition is AmbientCondition.ARTIFICIAL_LIGHT else 1.0
    sigma = (model.sigma0 + model.sigma_slope * readings / 1000.0) * mult
    outlier_prob = min(model.outlier_prob * mult, 1.0)

    noisy = readings + sigma * gauss
    noisy = np.where(outlier_draw < outlier_prob, readings - shortening, noisy)
    noisy = np.clip(noisy, MIN_READING_MM, frame.max_range_mm)
    noisy[np.isnan(readings)] = INVALID
    return ZoneFrame(readings=noisy, max_range_mm=frame.max_range_mm)


def scan(config: SensorConfig, scene: Scene, model: NoiseModel,
         condition: AmbientCondition, rng: np.random.Generator) -> ZoneFrame:
    """One full sensor scan: ray casting followed by the noise model."""
    return apply_noise(cast_zone_rays(config, scene), model, condition, rng)
