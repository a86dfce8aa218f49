import subprocess
import sys
from dataclasses import replace
from pathlib import Path

import matplotlib.pyplot as plt
import pytest

from ddmagsim_figures import (
    FIGURE_IDS,
    FigureRecipe,
    SchemaError,
    build_figure,
    read_table,
    render,
)

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
SCRIPT = Path(__file__).resolve().parents[1] / "render_figure.py"


@pytest.mark.parametrize("fig_id", FIGURE_IDS)
def test_each_reference_csv_renders(csv_dir, tmp_path, fig_id):
    out = tmp_path / f"{fig_id}.png"
    got = render(FigureRecipe(str(csv_dir / f"{fig_id}.csv"), fig_id, str(out)))
    assert got == str(out)
    blob = out.read_bytes()
    assert blob.startswith(PNG_MAGIC) and len(blob) > 2000
    print(f"RENDER {fig_id}: ok ({len(blob)} bytes)")


def test_fig4_contains_both_series(csv_dir):
    fig = build_figure("fig4", read_table(csv_dir / "fig4.csv"))
    try:
        lines = fig.axes[0].get_lines()
        labels = {ln.get_label() for ln in lines}
        styles = {ln.get_linestyle() for ln in lines}
        assert "ratio" in labels and "envelope" in labels
        assert "-" in styles and "--" in styles
    finally:
        plt.close(fig)


def test_fig3_one_curve_per_group(csv_dir):
    fig = build_figure("fig3", read_table(csv_dir / "fig3.csv"))
    try:
        ax = fig.axes[0]
        # two placement curves plus the no-decoupling baseline
        assert len(ax.containers) == 3
        assert ax.get_xscale() == "log"
        assert ax.get_xlabel() == "separation [m]"
    finally:
        plt.close(fig)


def test_fig5_ideal_line_plus_measurements(csv_dir):
    fig = build_figure("fig5", read_table(csv_dir / "fig5.csv"))
    try:
        ax = fig.axes[0]
        assert len(ax.containers) == 2
        solid = [ln for ln in ax.get_lines() if ln.get_label() == "ideal"]
        assert len(solid) == 1 and solid[0].get_linestyle() == "-"
    finally:
        plt.close(fig)


def test_fig6_draws_colorbar(csv_dir):
    fig = build_figure("fig6", read_table(csv_dir / "fig6.csv"))
    try:
        assert len(fig.axes) == 2  # map plus colorbar
    finally:
        plt.close(fig)


def test_fig6_incomplete_grid_rejected(csv_dir):
    t = read_table(csv_dir / "fig6.csv")
    clipped = replace(t, data=t.data[:-1])
    with pytest.raises(SchemaError, match="grid"):
        build_figure("fig6", clipped)


def test_empty_rows_are_a_schema_error(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text(
        "# experiment: signal-vs-detuning\n"
        "detuning_fraction[-],ratio[-],envelope[-]\n",
        encoding="utf-8",
    )
    with pytest.raises(SchemaError, match="no data rows"):
        render(FigureRecipe(str(p), "fig4", str(tmp_path / "x.png")))


def test_missing_column_error_names_it(csv_dir, tmp_path):
    # a fig3 CSV does not carry detuning columns
    with pytest.raises(SchemaError, match="detuning_fraction"):
        render(FigureRecipe(str(csv_dir / "fig3.csv"), "fig4",
                            str(tmp_path / "x.png")))


def test_unknown_figure_id_rejected(csv_dir, tmp_path):
    with pytest.raises(ValueError, match="fig7"):
        FigureRecipe(str(csv_dir / "fig4.csv"), "fig7", str(tmp_path / "x.png"))


def test_script_interface(csv_dir, tmp_path):
    out = tmp_path / "fig4.png"
    proc = subprocess.run(
        [sys.executable, str(SCRIPT), "--csv", str(csv_dir / "fig4.csv"),
         "--figure", "fig4", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.read_bytes().startswith(PNG_MAGIC)


def test_script_rejects_unknown_figure(csv_dir, tmp_path):
    proc = subprocess.run(
        [sys.executable, str(SCRIPT), "--csv", str(csv_dir / "fig4.csv"),
         "--figure", "fig9", "--out", str(tmp_path / "x.png")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2


def test_script_reports_schema_errors(csv_dir, tmp_path):
    proc = subprocess.run(
        [sys.executable, str(SCRIPT), "--csv", str(csv_dir / "fig3.csv"),
         "--figure", "fig4", "--out", str(tmp_path / "x.png")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert "detuning_fraction" in proc.stderr
