"""
Triangulation geometry
======================

How two range readings and the sensor baseline pin down a target position.
"""

from toftrack import (Baseline, Point2D, TriangleRanges, distance,
                      distance_from_time, forward_distances, triangulate)

# A time-of-flight sensor measures the round-trip travel time of a light
# pulse. One meter of one-way distance corresponds to about 6.67 ns.
for t in (0.0, 3.3356e-9, 6.6713e-9, 3.33564e-8):
    print(f"round-trip time {t:.4e} s  ->  one-way distance {distance_from_time(t):8.2f} mm")

# The tracking rig mounts two sensors one meter apart.
baseline = Baseline(Point2D(0.0, 0.0), Point2D(1000.0, 0.0))

# Say the target really sits at (330, 330). Each sensor would then report
# its straight-line range:
target = Point2D(330.0, 330.0)
ranges = forward_distances(target, baseline)
print(f"\ntrue target {target}")
print(f"range from sensor one: {ranges.a:.3f} mm")
print(f"range from sensor two: {ranges.b:.3f} mm")

# The two ranges plus the baseline form a triangle; the law of cosines
# recovers the corner the target occupies. `side` picks the half-plane,
# since the mirror image below the baseline fits the same triangle.
recovered = triangulate(ranges, baseline, side=1)
print(f"triangulated position: ({recovered.x:.6f}, {recovered.y:.6f})")
print(f"recovery error: {distance(recovered, target):.2e} mm")

# Inconsistent ranges (triangle inequality violated) are rejected rather
# than silently produced.
try:
    triangulate(TriangleRanges(100.0, 100.0), baseline)
except Exception as exc:
    print(f"\nimpossible ranges rejected: {exc}")
