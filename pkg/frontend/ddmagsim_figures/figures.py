"""Build and save figures from sweep tables.

Each figure id names a fixed plot layout and the CSV columns it needs; axis
text comes from the CSV header so re-gridded sweeps render unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvio import SchemaError, Table, read_table

_REQUIRED = {
    "fig3": ("separation", "placement_fraction", "dd", "fidelity", "fidelity_stderr"),
    "fig4": ("detuning_fraction", "ratio", "envelope"),
    "fig5": ("length", "placement_fraction", "ideal", "mean_toggled_azimuth", "azimuth_stderr"),
    "fig6": ("placement_fraction", "detuning_fraction", "normalized_rotation"),
}
FIGURE_IDS = tuple(_REQUIRED)


@dataclass(frozen=True)
class FigureRecipe:
    csv_path: str
    figure_id: str
    output_image_path: str

    def __post_init__(self):
        if self.figure_id not in _REQUIRED:
            raise ValueError(
                "unknown figure id %r (one of: %s)"
                % (self.figure_id, ", ".join(FIGURE_IDS))
            )


def _ordered_unique(values) -> list:
    return list(dict.fromkeys(values.tolist()))


def _plot_fig3(table: Table, ax) -> None:
    sep = table.column("separation")
    pf = table.column("placement_fraction")
    dd = table.column("dd")
    fid = table.column("fidelity")
    se = table.column("fidelity_stderr")
    for d, p in dict.fromkeys(zip(dd.tolist(), pf.tolist())):
        mask = (dd == d) & (pf == p)
        label = f"placement_fraction={p:g}" if d else f"dd={d:g}"
        ax.errorbar(sep[mask], fid[mask], yerr=se[mask], marker="o",
                    markersize=3, linewidth=1, capsize=2, label=label)
    ax.set_xscale("log")
    ax.set_xlabel(table.axis_label("separation"))
    ax.set_ylabel(table.axis_label("fidelity"))
    ax.legend(fontsize=8)


def _plot_fig4(table: Table, ax) -> None:
    d = table.column("detuning_fraction")
    ratio = table.column("ratio")
    env = table.column("envelope")
    ax.plot(d, ratio, linewidth=0.9, label="ratio")
    ax.plot(d, env, "k--", linewidth=0.9, label="envelope")
    ax.plot(d, -env, "k--", linewidth=0.9)
    ax.set_xlabel(table.axis_label("detuning_fraction"))
    ax.set_ylabel(table.axis_label("ratio"))
    ax.legend(fontsize=8)


def _plot_fig5(table: Table, ax) -> None:
    length = table.column("length")
    pf = table.column("placement_fraction")
    ideal = table.column("ideal")
    azim = table.column("mean_toggled_azimuth")
    se = table.column("azimuth_stderr")
    ref = ideal == 1.0
    if np.any(ref):
        ax.plot(length[ref], azim[ref], "k-", linewidth=1, label="ideal")
    for p in _ordered_unique(pf[~ref]):
        mask = ~ref & (pf == p)
        ax.errorbar(length[mask], azim[mask], yerr=se[mask], marker="o",
                    markersize=3, linestyle="none", capsize=2,
                    label=f"placement_fraction={p:g}")
    ax.set_xlabel(table.axis_label("length"))
    ax.set_ylabel(table.axis_label("mean_toggled_azimuth"))
    ax.legend(fontsize=8)


def _plot_fig6(table: Table, ax, fig) -> None:
    pf = table.column("placement_fraction")
    d = table.column("detuning_fraction")
    z = table.column("normalized_rotation")
    pfs = _ordered_unique(pf)
    ds = _ordered_unique(d)
    if len(pfs) * len(ds) != len(z):
        raise SchemaError(
            "heatmap rows do not form a complete grid: "
            f"{len(pfs)} x {len(ds)} != {len(z)}"
        )
    grid = z.reshape(len(pfs), len(ds))
    filled = ax.contourf(ds, pfs, grid, levels=21)
    ax.contour(ds, pfs, grid, levels=9, colors="k", linewidths=0.5)
    fig.colorbar(filled, ax=ax, label=table.axis_label("normalized_rotation"))
    ax.set_xlabel(table.axis_label("detuning_fraction"))
    ax.set_ylabel(table.axis_label("placement_fraction"))


def build_figure(figure_id: str, table: Table):
    """Return a matplotlib Figure for `table`; raises SchemaError on bad data."""
    if figure_id not in _REQUIRED:
        raise ValueError(f"unknown figure id {figure_id!r}")
    for name in _REQUIRED[figure_id]:
        table.column(name)
    if table.data.shape[0] == 0:
        raise SchemaError(f"{figure_id} CSV has no data rows")

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if figure_id == "fig3":
        _plot_fig3(table, ax)
    elif figure_id == "fig4":
        _plot_fig4(table, ax)
    elif figure_id == "fig5":
        _plot_fig5(table, ax)
    else:
        _plot_fig6(table, ax, fig)
    title = table.metadata.get("experiment", figure_id)
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    return fig


def render(recipe: FigureRecipe) -> str:
    """Render `recipe.csv_path` as `recipe.figure_id` and save a raster image."""
    table = read_table(recipe.csv_path)
    fig = build_figure(recipe.figure_id, table)
    try:
        fig.savefig(recipe.output_image_path, dpi=150)
    finally:
        plt.close(fig)
    return recipe.output_image_path
