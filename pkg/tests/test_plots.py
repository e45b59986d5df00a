import re
import xml.etree.ElementTree as ET

import pytest

from toftrack import export_scatter
from toftrack.datasets import load_exp1, load_exp2
from toftrack.plots import (MARGIN, PLOT_SPAN, SQUARE_SIDE, data_to_px,
                            scatter_rows)


class TestScatterRows:
    def test_counts(self):
        rows = scatter_rows(load_exp2())
        assert len(rows) == 44  # 40 trials + 4 actuals
        assert sum(r[4] for r in rows) == 4

    def test_actual_rows_carry_actual_coordinates(self):
        table = load_exp1()
        rows = [r for r in scatter_rows(table) if r[4] == 1]
        assert (rows[0][2], rows[0][3]) == (330.0, 330.0)
        assert rows[0][1] == 0  # actuals carry trial index 0


class TestExport:
    def test_writes_both_files(self, tmp_path):
        csv_path, svg_path = export_scatter(load_exp2(), tmp_path)
        assert csv_path.name == "exp2.csv" and svg_path.name == "exp2.svg"
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "position_index,trial_index,x_mm,y_mm,is_actual"
        assert len(lines) == 45  # header + 44 points

    def test_svg_is_well_formed(self, tmp_path):
        _, svg_path = export_scatter(load_exp1(), tmp_path)
        root = ET.fromstring(svg_path.read_text())
        assert root.tag.endswith("svg")

    def test_square_lands_on_viewport_transform(self, tmp_path):
        _, svg_path = export_scatter(load_exp1(), tmp_path)
        expected_x, expected_y = data_to_px(330.0, 330.0)
        want = (f'x="{expected_x - SQUARE_SIDE / 2:.2f}" '
                f'y="{expected_y - SQUARE_SIDE / 2:.2f}"')
        assert want in svg_path.read_text()

    def test_dot_count_matches_trials(self, tmp_path):
        _, svg_path = export_scatter(load_exp2(), tmp_path)
        text = svg_path.read_text()
        assert len(re.findall(r"<circle ", text)) == 40

    def test_axes_span_declared_viewport(self, tmp_path):
        # corners of the data span map onto the plot rectangle
        assert data_to_px(0.0, 0.0) == (MARGIN, MARGIN + PLOT_SPAN)
        assert data_to_px(1000.0, 1000.0) == (MARGIN + PLOT_SPAN, MARGIN)

    def test_io_error_propagates(self, tmp_path):
        target = tmp_path / "somefile"
        target.write_text("x")
        with pytest.raises(OSError):
            export_scatter(load_exp1(), target / "sub")
