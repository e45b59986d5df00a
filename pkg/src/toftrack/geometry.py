"""Planar geometry for two-sensor time-of-flight tracking.

Distances are millimeters throughout. A target position is recovered from
two ranges (one per sensor) and the known sensor-to-sensor baseline via the
law of cosines: the angle at sensor one is

    theta = arccos((A^2 + C^2 - B^2) / (2 * A * C))

and the target sits at distance A from sensor one, rotated by theta off the
baseline direction, on the half-plane chosen by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Exact by definition (SI), meters per second.
SPEED_OF_LIGHT_M_PER_S = 299_792_458.0

# Relative slack on the arccos argument: absorbs floating-point error on
# collinear triangles without masking genuinely inconsistent ranges.
COS_CLAMP_TOLERANCE = 1e-9

LEFT = 1
RIGHT = -1


class DegenerateTriangleError(ValueError):
    """Two ranges and the baseline violate the triangle inequality."""


@dataclass(frozen=True)
class Point2D:
    """Planar position in millimeters."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"coordinates must be finite, got ({self.x}, {self.y})")


def distance(p: Point2D, q: Point2D) -> float:
    """Euclidean distance between two points, in mm."""
    return math.hypot(p.x - q.x, p.y - q.y)


@dataclass(frozen=True)
class Baseline:
    """The segment between the two sensors; its length is the triangle side C."""

    s1: Point2D
    s2: Point2D

    def __post_init__(self):
        if distance(self.s1, self.s2) <= 0.0:
            raise ValueError("baseline sensors must be at distinct positions")

    @property
    def length(self) -> float:
        return distance(self.s1, self.s2)


@dataclass(frozen=True)
class TriangleRanges:
    """Measured ranges from sensor one (a) and sensor two (b), in mm."""

    a: float
    b: float

    def __post_init__(self):
        for name, value in (("a", self.a), ("b", self.b)):
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(f"range {name} must be finite and > 0, got {value}")


def distance_from_time(t: float) -> float:
    """Convert a round-trip flight time in seconds to a one-way distance in mm.

    The emitted pulse travels to the target and back, so the one-way distance
    is half the product of flight time and the speed of light.
    """
    if not math.isfinite(t) or t < 0.0:
        raise ValueError(f"flight time must be finite and >= 0, got {t}")
    return t * SPEED_OF_LIGHT_M_PER_S / 2.0 * 1000.0


def triangulate(ranges: TriangleRanges, baseline: Baseline, side: int = LEFT) -> Point2D:
    """Locate the target from two ranges and the baseline.

    `side` picks the half-plane: LEFT (+1) means the target lies to the left
    of the s1->s2 direction (counterclockwise), RIGHT (-1) to the right. With
    sensors on the x-axis and s2 east of s1, LEFT selects +y.

    Raises DegenerateTriangleError when the triangle inequality is violated
    beyond the floating-point clamp tolerance.
    """
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT} or {RIGHT}, got {side}")
    a, b = ranges.a, ranges.b
    c = baseline.length

    cos_theta = (a * a + c * c - b * b) / (2.0 * a * c)
    if abs(cos_theta) > 1.0 + COS_CLAMP_TOLERANCE:
        raise DegenerateTriangleError(
            f"ranges a={a}, b={b} and baseline c={c} form no triangle "
            f"(cos argument {cos_theta})"
        )
    cos_theta = max(-1.0, min(1.0, cos_theta))
    sin_theta = math.sqrt(1.0 - cos_theta * cos_theta)

    # Rotate the baseline-aligned solution into the world frame.
    ux = (baseline.s2.x - baseline.s1.x) / c
    uy = (baseline.s2.y - baseline.s1.y) / c
    along = a * cos_theta
    off = side * a * sin_theta
    return Point2D(
        baseline.s1.x + along * ux - off * uy,
        baseline.s1.y + along * uy + off * ux,
    )


def forward_distances(target: Point2D, baseline: Baseline) -> TriangleRanges:
    """Exact ranges from each sensor to a known target (test oracle)."""
    a = distance(target, baseline.s1)
    b = distance(target, baseline.s2)
    if a == 0.0 or b == 0.0:
        raise ValueError("target coincides with a sensor position")
    return TriangleRanges(a=a, b=b)
