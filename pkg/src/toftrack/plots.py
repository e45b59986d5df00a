"""Scatter exports: a tidy CSV of points and a self-contained SVG plot.

The SVG is written directly (no plotting library) so its point
coordinates are stable and testable: data maps through the fixed
viewport transform below, dots mark trials, squares mark actual
positions, one color per position.
"""

from __future__ import annotations

from pathlib import Path

from .experiments import TrialTable

# Viewport transform: data in [AXIS_MIN, AXIS_MAX] mm maps linearly onto a
# PLOT_SPAN px square offset by MARGIN px, with y flipped (SVG y grows down).
SVG_SIZE = 640
MARGIN = 70
PLOT_SPAN = SVG_SIZE - 2 * MARGIN
AXIS_MIN = 0.0
AXIS_MAX = 1000.0

DOT_RADIUS = 3.0
SQUARE_SIDE = 10.0
TICK_STEP = 200.0

POSITION_COLORS = ("#0173b2", "#de8f05", "#029e73", "#d55e00",
                   "#cc78bc", "#ca9161", "#56b4e9", "#949494")


def data_to_px(x_mm: float, y_mm: float) -> tuple[float, float]:
    """Map a data point (mm) to SVG pixel coordinates."""
    fx = (x_mm - AXIS_MIN) / (AXIS_MAX - AXIS_MIN)
    fy = (y_mm - AXIS_MIN) / (AXIS_MAX - AXIS_MIN)
    return MARGIN + fx * PLOT_SPAN, MARGIN + PLOT_SPAN - fy * PLOT_SPAN


def scatter_rows(table: TrialTable) -> list[tuple[int, int, float, float, int]]:
    """Tidy rows (position_index, trial_index, x_mm, y_mm, is_actual).

    Indices are 1-based; the actual position of each marked location is
    emitted after its trials with trial_index 0 and is_actual 1.
    """
    rows = []
    for pi, pos in enumerate(table.positions, start=1):
        for ti, p in enumerate(pos.trials, start=1):
            rows.append((pi, ti, p.x, p.y, 0))
        rows.append((pi, 0, pos.actual.x, pos.actual.y, 1))
    return rows


def write_scatter_csv(table: TrialTable, path) -> None:
    lines = ["position_index,trial_index,x_mm,y_mm,is_actual"]
    for pi, ti, x, y, is_actual in scatter_rows(table):
        lines.append(f"{pi},{ti},{x!r},{y!r},{is_actual}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _svg_axes(parts: list[str]) -> None:
    left, top = MARGIN, MARGIN
    right, bottom = MARGIN + PLOT_SPAN, MARGIN + PLOT_SPAN
    parts.append(f'<rect x="{left}" y="{top}" width="{PLOT_SPAN}" '
                 f'height="{PLOT_SPAN}" fill="white" stroke="black"/>')
    tick = AXIS_MIN
    while tick <= AXIS_MAX:
        px, _ = data_to_px(tick, AXIS_MIN)
        parts.append(f'<line x1="{px:.2f}" y1="{bottom}" x2="{px:.2f}" '
                     f'y2="{bottom + 6}" stroke="black"/>')
        parts.append(f'<text x="{px:.2f}" y="{bottom + 22}" font-size="12" '
                     f'text-anchor="middle">{tick:.0f}</text>')
        _, py = data_to_px(AXIS_MIN, tick)
        parts.append(f'<line x1="{left - 6}" y1="{py:.2f}" x2="{left}" '
                     f'y2="{py:.2f}" stroke="black"/>')
        parts.append(f'<text x="{left - 10}" y="{py + 4:.2f}" font-size="12" '
                     f'text-anchor="end">{tick:.0f}</text>')
        tick += TICK_STEP
    mid = MARGIN + PLOT_SPAN / 2
    parts.append(f'<text x="{mid}" y="{bottom + 42}" font-size="14" '
                 f'text-anchor="middle">x (mm)</text>')
    parts.append(f'<text x="18" y="{mid}" font-size="14" text-anchor="middle" '
                 f'transform="rotate(-90 18 {mid})">y (mm)</text>')


def write_scatter_svg(table: TrialTable, path) -> None:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" '
        f'height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<text x="{SVG_SIZE / 2}" y="34" font-size="16" '
        f'text-anchor="middle">{table.experiment_id}</text>',
    ]
    _svg_axes(parts)
    for pi, pos in enumerate(table.positions):
        color = POSITION_COLORS[pi % len(POSITION_COLORS)]
        for p in pos.trials:
            px, py = data_to_px(p.x, p.y)
            parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" '
                         f'r="{DOT_RADIUS}" fill="{color}" fill-opacity="0.8"/>')
        ax, ay = data_to_px(pos.actual.x, pos.actual.y)
        parts.append(
            f'<rect x="{ax - SQUARE_SIDE / 2:.2f}" y="{ay - SQUARE_SIDE / 2:.2f}" '
            f'width="{SQUARE_SIDE}" height="{SQUARE_SIDE}" fill="{color}" '
            f'stroke="black"/>')
        lx = MARGIN + PLOT_SPAN + 8
        ly = MARGIN + 16 * (pi + 1)
        parts.append(f'<rect x="{lx}" y="{ly - 9}" width="9" height="9" '
                     f'fill="{color}"/>')
        parts.append(f'<text x="{lx + 13}" y="{ly}" font-size="11">'
                     f'{pi + 1}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")


def export_scatter(table: TrialTable, directory, stem: str | None = None
                   ) -> tuple[Path, Path]:
    """Write `<stem>.csv` and `<stem>.svg` under `directory`.

    The stem defaults to the table's experiment id. Returns the two paths.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    if stem is None:
        stem = table.experiment_id or "scatter"
    csv_path = directory / f"{stem}.csv"
    svg_path = directory / f"{stem}.svg"
    write_scatter_csv(table, csv_path)
    write_scatter_svg(table, svg_path)
    return csv_path, svg_path
