"""Trial datasets, precision/accuracy statistics, and simulated runs.

A trial table is one experiment: a handful of marked target positions,
each measured for N trials. Tables load from (and save to) a small CSV
format, feed a statistics report (per-position per-axis population std
dev and percent error, with row averages), and can be produced
synthetically by running the simulated rig through the same protocol.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (Baseline, DegenerateTriangleError, Point2D)
from .sensor import (AmbientCondition, Circle, NoiseModel, Scene, SensorConfig,
                     Segment, scan)
from .tracker import NoTargetError, estimate_position


class TrialParseError(ValueError):
    """Trial CSV rejected; carries the 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where = f" ({where})"
        super().__init__(message + where)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class PositionTrials:
    """All trials recorded with the target at one marked position."""

    actual: Point2D
    trials: tuple[Point2D, ...]


@dataclass(frozen=True)
class TrialFailure:
    """A simulated trial that produced no estimate (indices are 0-based)."""

    position_index: int
    trial_index: int
    reason: str


@dataclass(frozen=True)
class TrialTable:
    """One experiment's worth of positions and per-trial estimates."""

    experiment_id: str
    lighting: AmbientCondition | None
    positions: tuple[PositionTrials, ...]
    failures: tuple[TrialFailure, ...] = ()

    def __post_init__(self):
        if not self.positions:
            raise ValueError("a trial table needs at least one position")


@dataclass(frozen=True)
class StatsReport:
    """Per-position per-axis spread and error, flattened in table order
    (position 1 x, position 1 y, position 2 x, ...), plus row averages."""

    experiment_id: str
    std_dev: tuple[float, ...]
    percent_error: tuple[float, ...]
    avg_std_dev: float
    avg_percent_error: float


def population_std(values) -> float:
    """Standard deviation with divisor n (not n-1), in the input's units."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("population_std needs at least one value")
    return float(arr.std(ddof=0))


def percent_error(values, actual: float) -> float:
    """Mean over trials of |value - actual| / actual, as a percentage."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("percent_error needs at least one value")
    if actual == 0.0:
        raise ValueError("percent_error is undefined for actual = 0")
    return float(np.mean(np.abs(arr - actual) / abs(actual)) * 100.0)


def stats_report(table: TrialTable) -> StatsReport:
    """Compute the precision/accuracy summary for one trial table."""
    stds: list[float] = []
    errs: list[float] = []
    for index, pos in enumerate(table.positions):
        if not pos.trials:
            raise ValueError(f"position {index + 1} has no surviving trials")
        xs = [p.x for p in pos.trials]
        ys = [p.y for p in pos.trials]
        stds.append(population_std(xs))
        stds.append(population_std(ys))
        errs.append(percent_error(xs, pos.actual.x))
        errs.append(percent_error(ys, pos.actual.y))
    return StatsReport(
        experiment_id=table.experiment_id,
        std_dev=tuple(stds),
        percent_error=tuple(errs),
        avg_std_dev=float(np.mean(stds)),
        avg_percent_error=float(np.mean(errs)),
    )


# ---------------------------------------------------------------------------
# CSV interchange
#
# Header: trial,p1_x,p1_y,...,pK_x,pK_y
# then one numbered row per trial and a final row whose first field is
# literally "actual". All cells are mm, integer or decimal.
# ---------------------------------------------------------------------------

def _expected_header(n_positions: int) -> list[str]:
    cols = ["trial"]
    for i in range(1, n_positions + 1):
        cols += [f"p{i}_x", f"p{i}_y"]
    return cols


def _parse_cell(text: str, line: int, column: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise TrialParseError(f"non-numeric cell {text!r}", line, column) from None
    if not math.isfinite(value):
        raise TrialParseError(f"non-finite cell {text!r}", line, column)
    return value


def load_trials(source, experiment_id: str | None = None,
                lighting: AmbientCondition | None = None) -> TrialTable:
    """Parse a trial CSV. Trial order is preserved exactly as filed."""
    path = str(source)
    with open(source, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise TrialParseError(f"{path}: empty file", line=1)

    header = [h.strip() for h in rows[0]]
    if header[0] != "trial" or len(header) < 3 or (len(header) - 1) % 2 != 0:
        raise TrialParseError(f"{path}: malformed header {header!r}", line=1)
    n_positions = (len(header) - 1) // 2
    if header != _expected_header(n_positions):
        raise TrialParseError(f"{path}: malformed header {header!r}", line=1)

    data_rows = rows[1:]
    if not data_rows:
        raise TrialParseError(f"{path}: no data rows", line=1)

    trials_per_position: list[list[Point2D]] = [[] for _ in range(n_positions)]
    actuals: list[Point2D] | None = None
    for offset, row in enumerate(data_rows):
        line = offset + 2
        if len(row) != len(header):
            raise TrialParseError(
                f"{path}: expected {len(header)} fields, got {len(row)}", line)
        label = row[0].strip()
        is_actual = label == "actual"
        if is_actual and offset != len(data_rows) - 1:
            raise TrialParseError(f"{path}: 'actual' row must come last", line)
        if not is_actual:
            _parse_cell(label, line, 1)  # trial number must be numeric
        points = []
        for i in range(n_positions):
            x = _parse_cell(row[1 + 2 * i].strip(), line, 2 + 2 * i)
            y = _parse_cell(row[2 + 2 * i].strip(), line, 3 + 2 * i)
            points.append(Point2D(x, y))
        if is_actual:
            actuals = points
        else:
            for i, p in enumerate(points):
                trials_per_position[i].append(p)

    if actuals is None:
        raise TrialParseError(f"{path}: missing 'actual' row", line=len(rows))
    if not trials_per_position[0]:
        raise TrialParseError(f"{path}: no trial rows before 'actual'", line=2)

    if experiment_id is None:
        stem = path.rsplit("/", 1)[-1]
        experiment_id = stem.rsplit(".", 1)[0]
    positions = tuple(
        PositionTrials(actual=actuals[i], trials=tuple(trials_per_position[i]))
        for i in range(n_positions)
    )
    return TrialTable(experiment_id=experiment_id, lighting=lighting,
                      positions=positions)


def _format_mm(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def save_trials(table: TrialTable, path) -> None:
    """Write a table back to the CSV format load_trials reads.

    Only the recorded estimates are serialized; failure records are
    sidecar metadata with no CSV representation. Every position must
    hold the same number of trials.
    """
    counts = {len(p.trials) for p in table.positions}
    if len(counts) != 1:
        raise ValueError(f"positions have differing trial counts {sorted(counts)}")
    (n_trials,) = counts
    if n_trials == 0:
        raise ValueError("cannot save a table with no trials")

    lines = [",".join(_expected_header(len(table.positions)))]
    for t in range(n_trials):
        cells = [str(t + 1)]
        for pos in table.positions:
            cells += [_format_mm(pos.trials[t].x), _format_mm(pos.trials[t].y)]
        lines.append(",".join(cells))
    cells = ["actual"]
    for pos in table.positions:
        cells += [_format_mm(pos.actual.x), _format_mm(pos.actual.y)]
    lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Simulated runs of the measurement protocol
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rig:
    """Two mounted sensors plus the static scene they share."""

    sensor_a: SensorConfig
    sensor_b: SensorConfig
    walls: tuple[Segment, ...]
    target_radius: float
    interior_side: int = 1

    @property
    def baseline(self) -> Baseline:
        return Baseline(self.sensor_a.position, self.sensor_b.position)


def frame_walls(size_mm: float) -> tuple[Segment, ...]:
    """The square test frame's walls; the far side is open so the
    subject can enter."""
    o = Point2D(0.0, 0.0)
    e = Point2D(size_mm, 0.0)
    ne = Point2D(size_mm, size_mm)
    nw = Point2D(0.0, size_mm)
    return (Segment(o, e), Segment(e, ne), Segment(nw, o))


# The four marked target locations used by the shipped datasets, mm.
DEFAULT_TARGET_POSITIONS = (
    Point2D(330.0, 330.0),
    Point2D(660.0, 330.0),
    Point2D(660.0, 660.0),
    Point2D(330.0, 660.0),
)


# Mounting angle and optics of the shipped rig. A 4-column grid centered on
# the 45-degree diagonal straddles it, leaving the marked positions between
# rays, so the sensors are yawed to put one column ray through each marked
# location: columns at 8.13/26.57/45/63.43 degrees (sensor two mirrored).
DEFAULT_YAW_DEG = 35.7825
DEFAULT_FOV_DEG = 73.7398
# Range gate just inside the frame: wall returns are discarded as clutter.
DEFAULT_MAX_RANGE_MM = 990.0


def default_rig(zones_per_side: int = 4, fov_deg: float = DEFAULT_FOV_DEG,
                frame_size_mm: float = 1000.0, target_radius_mm: float = 50.0,
                max_range_mm: float = DEFAULT_MAX_RANGE_MM) -> Rig:
    """Corner-mounted rig: sensors in adjacent corners aimed into the frame,
    with the column rays landing on the four marked target locations."""
    a = SensorConfig(position=Point2D(0.0, 0.0), yaw_deg=DEFAULT_YAW_DEG,
                     fov_deg=fov_deg, zones_per_side=zones_per_side,
                     max_range_mm=max_range_mm)
    b = SensorConfig(position=Point2D(frame_size_mm, 0.0),
                     yaw_deg=180.0 - DEFAULT_YAW_DEG, fov_deg=fov_deg,
                     zones_per_side=zones_per_side, max_range_mm=max_range_mm)
    return Rig(sensor_a=a, sensor_b=b, walls=frame_walls(frame_size_mm),
               target_radius=target_radius_mm, interior_side=1)


def _trial_rng(seed: int, position_index: int, trial_index: int,
               sensor_index: int) -> np.random.Generator:
    # Keyed per (position, trial, sensor) so results are independent of
    # execution order and safe to parallelize.
    return np.random.default_rng([seed, position_index, trial_index, sensor_index])


# Scan attempts allowed per requested trial before a position is declared
# lost; mirrors a live run sampling until it has collected its readings.
ATTEMPT_BUDGET_FACTOR = 10


def run_simulated_experiment(rig: Rig, actual_positions, n_trials: int,
                             condition: AmbientCondition, model: NoiseModel,
                             seed: int = 0, radius_compensation: float = 0.0,
                             experiment_id: str | None = None) -> TrialTable:
    """Run the measurement protocol against the simulated rig.

    For each marked position the target circle is placed and scan pairs
    are triangulated until n_trials estimates are recorded, the way a
    live run keeps sampling until it has its readings. Attempts that
    lose the target or yield inconsistent ranges are recorded as flagged
    failures (their trial_index is the attempt number) rather than
    aborting the run; a position that cannot complete within
    10 * n_trials attempts is left short, which stats_report and the
    command line surface as an error.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    actual_positions = tuple(actual_positions)
    if not actual_positions:
        raise ValueError("at least one target position is required")

    baseline = rig.baseline
    positions: list[PositionTrials] = []
    failures: list[TrialFailure] = []
    for pi, actual in enumerate(actual_positions):
        scene = Scene(walls=rig.walls,
                      target=Circle(center=actual, radius=rig.target_radius))
        estimates: list[Point2D] = []
        for attempt in range(ATTEMPT_BUDGET_FACTOR * n_trials):
            if len(estimates) == n_trials:
                break
            frame_a = scan(rig.sensor_a, scene, model, condition,
                           _trial_rng(seed, pi, attempt, 0))
            frame_b = scan(rig.sensor_b, scene, model, condition,
                           _trial_rng(seed, pi, attempt, 1))
            try:
                estimate = estimate_position(
                    frame_a, frame_b, baseline,
                    radius_compensation=radius_compensation,
                    side=rig.interior_side)
            except (NoTargetError, DegenerateTriangleError) as exc:
                failures.append(TrialFailure(position_index=pi,
                                             trial_index=attempt,
                                             reason=str(exc)))
                continue
            estimates.append(estimate.position)
        positions.append(PositionTrials(actual=actual, trials=tuple(estimates)))

    if experiment_id is None:
        experiment_id = f"sim-{condition.value}"
    return TrialTable(experiment_id=experiment_id, lighting=condition,
                      positions=tuple(positions), failures=tuple(failures))
