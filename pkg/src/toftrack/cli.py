"""Command-line interface: replay, simulate, calibrate, and plot.

Exit codes: 0 success, 1 usage error, 2 data or config parse error,
3 runtime (geometry, simulation, or I/O) error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, load_rig_config
from .experiments import (DEFAULT_TARGET_POSITIONS, TrialParseError, TrialTable,
                          load_trials, run_simulated_experiment, save_trials,
                          stats_report)
from .geometry import DegenerateTriangleError
from .plots import scatter_rows, write_scatter_csv, write_scatter_svg
from .sensor import AmbientCondition
from .tracker import (NoTargetError, apply_calibration, fit_calibration,
                      save_calibration)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3

_AMBIENT = {"dark": AmbientCondition.DARK, "lit": AmbientCondition.ARTIFICIAL_LIGHT}


class SimulationError(RuntimeError):
    """A simulated run could not complete a position's trials."""


class OutputIOError(RuntimeError):
    """Writing a result file failed."""


def _write(writer, *args) -> None:
    try:
        writer(*args)
    except OSError as exc:
        raise OutputIOError(str(exc)) from exc


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage failures exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _axis_labels(n_positions: int) -> list[str]:
    labels = []
    for i in range(1, n_positions + 1):
        labels += [f"{i} x", f"{i} y"]
    return labels


def render_stats_text(report) -> str:
    """Stats in the published table shape: one row of per-position-axis
    columns followed by the row average."""
    labels = _axis_labels(len(report.std_dev) // 2)
    head = "position " + "".join(f"{lab:>9}" for lab in labels)
    std_row = "std dev  " + "".join(f"{v:>9.2f}" for v in report.std_dev)
    err_row = "error    " + "".join(f"{v:>8.2f}%" for v in report.percent_error)
    return "\n".join([
        f"experiment {report.experiment_id}",
        "",
        "standard deviation (mm)",
        head,
        std_row,
        f"Average {report.avg_std_dev:.2f} mm",
        "",
        "percent error",
        head,
        err_row,
        f"Average {report.avg_percent_error:.2f}%",
    ])


def render_stats_csv(report) -> str:
    n = len(report.std_dev) // 2
    cols = ["metric"]
    for i in range(1, n + 1):
        cols += [f"p{i}_x", f"p{i}_y"]
    cols.append("average")
    lines = [",".join(cols)]
    lines.append(",".join(["std_dev_mm"] + [repr(v) for v in report.std_dev]
                          + [repr(report.avg_std_dev)]))
    lines.append(",".join(["percent_error"] + [repr(v) for v in report.percent_error]
                          + [repr(report.avg_percent_error)]))
    return "\n".join(lines)


def render_scatter_text(table: TrialTable) -> str:
    rows = scatter_rows(table)
    lines = [f"{'position':>8} {'trial':>5} {'x_mm':>10} {'y_mm':>10} {'actual':>6}"]
    for pi, ti, x, y, is_actual in rows:
        lines.append(f"{pi:>8} {ti:>5} {x:>10.2f} {y:>10.2f} {is_actual:>6}")
    return "\n".join(lines)


def render_scatter_csv(table: TrialTable) -> str:
    lines = ["position_index,trial_index,x_mm,y_mm,is_actual"]
    for pi, ti, x, y, is_actual in scatter_rows(table):
        lines.append(f"{pi},{ti},{x!r},{y!r},{is_actual}")
    return "\n".join(lines)


# A trial cluster this far from its filed actual points at a data-entry
# problem, not measurement bias (systematic shifts run tens of mm).
ANOMALY_CENTROID_OFFSET_MM = 100.0


def _anomaly_notes(table: TrialTable) -> list[str]:
    notes = []
    for index, pos in enumerate(table.positions, start=1):
        cx = sum(p.x for p in pos.trials) / len(pos.trials)
        cy = sum(p.y for p in pos.trials) / len(pos.trials)
        offset = ((cx - pos.actual.x) ** 2 + (cy - pos.actual.y) ** 2) ** 0.5
        if offset > ANOMALY_CENTROID_OFFSET_MM:
            notes.append(
                f"note: position {index} actual ({pos.actual.x:.0f}, "
                f"{pos.actual.y:.0f}) lies {offset:.0f} mm from the trial "
                f"centroid ({cx:.0f}, {cy:.0f}); the filed actual row may "
                f"not match the measurements")
    return notes


def cmd_replay(args) -> int:
    table = load_trials(args.data)
    out = []
    if args.report in ("stats", "both"):
        report = stats_report(table)
        out.append(render_stats_text(report) if args.format == "text"
                   else render_stats_csv(report))
    if args.report in ("scatter", "both"):
        out.append(render_scatter_text(table) if args.format == "text"
                   else render_scatter_csv(table))
    if args.note_anomalies:
        notes = _anomaly_notes(table)
        out.append("\n".join(notes) if notes else "no anomalies detected")
    print("\n\n".join(out))
    return EXIT_OK


def cmd_simulate(args, parser: _Parser) -> int:
    if args.trials < 1:
        parser.error(f"--trials must be >= 1, got {args.trials}")
    setup = load_rig_config(args.config)
    seed = setup.seed if args.seed is None else args.seed
    condition = _AMBIENT[args.ambient]
    table = run_simulated_experiment(
        setup.rig, DEFAULT_TARGET_POSITIONS, args.trials, condition,
        setup.noise, seed=seed, experiment_id=f"sim-{args.ambient}-seed{seed}")

    short = [(i + 1, len(p.trials)) for i, p in enumerate(table.positions)
             if len(p.trials) < args.trials]
    if short:
        detail = "; ".join(f"position {i}: {n}/{args.trials} trials" for i, n in short)
        raise SimulationError(f"run incomplete ({detail}); "
                              f"{len(table.failures)} attempts failed")

    _write(save_trials, table, args.out)
    print(f"# {table.experiment_id} ambient={args.ambient} seed={seed} "
          f"trials={args.trials} -> {args.out}")
    if table.failures:
        print(f"# {len(table.failures)} failed attempts were retried")
    print(render_stats_text(stats_report(table)))
    return EXIT_OK


def cmd_calibrate(args) -> int:
    table = load_trials(args.data)
    pairs = [(trial, pos.actual) for pos in table.positions for trial in pos.trials]
    model = fit_calibration(pairs, mode=args.mode)
    _write(save_calibration, model, args.out)

    before = stats_report(table)
    calibrated = TrialTable(
        experiment_id=table.experiment_id + "-calibrated",
        lighting=table.lighting,
        positions=tuple(
            type(pos)(actual=pos.actual,
                      trials=tuple(apply_calibration(p, model) for p in pos.trials))
            for pos in table.positions),
    )
    after = stats_report(calibrated)
    print(f"calibration ({args.mode}) written to {args.out}")
    print(f"offset_x={model.offset_x:.4f} mm offset_y={model.offset_y:.4f} mm "
          f"scale_x={model.scale_x:.6f} scale_y={model.scale_y:.6f}")
    print(f"avg percent error before {before.avg_percent_error:.2f}% "
          f"after {after.avg_percent_error:.2f}%")
    return EXIT_OK


def cmd_plot(args) -> int:
    table = load_trials(args.data)
    svg_path = Path(args.out)
    csv_path = svg_path.with_suffix(".csv")
    _write(write_scatter_svg, table, svg_path)
    _write(write_scatter_csv, table, csv_path)
    print(f"wrote {svg_path} and {csv_path}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="toftrack",
                     description="Two-sensor time-of-flight tracking toolkit")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("replay", help="statistics/scatter from a trial CSV")
    p.add_argument("data", help="trial CSV file")
    p.add_argument("--report", choices=("stats", "scatter", "both"),
                   default="stats")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--note-anomalies", action="store_true",
                   help="flag positions whose trials cluster far from the "
                        "filed actual")

    p = sub.add_parser("simulate", help="run the simulated protocol")
    p.add_argument("config", help="rig key=value config file")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--ambient", choices=tuple(_AMBIENT), default="dark")
    p.add_argument("--out", required=True, help="trial CSV to write")
    p.add_argument("--seed", type=int, default=None,
                   help="overrides the config file's seed (default 0)")

    p = sub.add_parser("calibrate", help="fit a calibration from a trial CSV")
    p.add_argument("data", help="trial CSV file")
    p.add_argument("--mode", choices=("offset", "affine"), default="offset")
    p.add_argument("--out", required=True, help="model key=value file to write")

    p = sub.add_parser("plot", help="write the scatter SVG for a trial CSV")
    p.add_argument("data", help="trial CSV file")
    p.add_argument("--out", required=True, help="SVG path to write")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "replay":
            return cmd_replay(args)
        if args.command == "simulate":
            return cmd_simulate(args, parser)
        if args.command == "calibrate":
            return cmd_calibrate(args)
        if args.command == "plot":
            return cmd_plot(args)
        parser.error(f"unknown command {args.command!r}")
    except SystemExit as exc:
        return int(exc.code or 0)
    except (NoTargetError, DegenerateTriangleError, SimulationError,
            OutputIOError) as exc:
        print(f"toftrack: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (TrialParseError, ConfigError, FileNotFoundError, IsADirectoryError,
            ValueError) as exc:
        print(f"toftrack: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"toftrack: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
