"""Render ddmagsim sweep CSVs as publication-style figures.

This package reads the simulator's CSV output format and draws the four
standard diagnostic figures. It contains no physics and never imports the
simulator; the CSV files and the `ddmagsim` CLI are its only interface.
"""

from .csvio import SchemaError, Table, read_table
from .figures import FIGURE_IDS, FigureRecipe, build_figure, render

__all__ = [
    "FIGURE_IDS",
    "FigureRecipe",
    "SchemaError",
    "Table",
    "build_figure",
    "read_table",
    "render",
]
