"""
Replaying the recorded experiments
==================================

Load the two shipped trial datasets and reproduce their precision and
accuracy tables, then export scatter plots.
"""

from pathlib import Path

from toftrack import export_scatter, stats_report
from toftrack.datasets import load_exp1, load_exp2

out_dir = Path("demo_output")

for table in (load_exp1(), load_exp2()):
    report = stats_report(table)
    print(f"=== {table.experiment_id} ({table.lighting.value}) ===")
    print("per-position std dev (mm):",
          "  ".join(f"{v:.2f}" for v in report.std_dev))
    print(f"average std dev:       {report.avg_std_dev:.2f} mm")
    print("per-position error (%):  ",
          "  ".join(f"{v:.2f}" for v in report.percent_error))
    print(f"average percent error: {report.avg_percent_error:.2f}%")

    csv_path, svg_path = export_scatter(table, out_dir)
    print(f"scatter data -> {csv_path}")
    print(f"scatter plot -> {svg_path}\n")

# The dark run is roughly twice as precise (10.59 vs 23.70 mm average
# spread) and six times as accurate (4.54% vs 29.39%) as the run under
# artificial lighting: ambient light triggers the detector early and
# shortens readings.
