"""Reader for the sweep CSV files written by the ddmagsim CLI.

The format is line-oriented: `# key: value` metadata lines, then one header
line of comma-separated `label[unit]` cells, then numeric rows. Everything
here is consumed as text; this package never imports the simulator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

_CELL = re.compile(r"^(?P<label>[^\[\]]+)\[(?P<unit>[^\[\]]*)\]$")


class SchemaError(ValueError):
    """The CSV does not match the expected sweep-table shape."""


@dataclass(frozen=True)
class Table:
    """One parsed sweep CSV: metadata, column labels/units, numeric data."""

    metadata: dict[str, str]
    labels: tuple[str, ...]
    units: tuple[str, ...]
    data: np.ndarray

    def column(self, label: str) -> np.ndarray:
        if label not in self.labels:
            raise SchemaError(
                "missing column %r (have: %s)" % (label, ", ".join(self.labels))
            )
        return self.data[:, self.labels.index(label)]

    def axis_label(self, label: str) -> str:
        """Axis text built from the header cell, e.g. 'length [m]'."""
        unit = self.units[self.labels.index(label)] if label in self.labels else ""
        return f"{label} [{unit}]" if unit not in ("", "-") else label


def _parse_header(line: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    labels, units = [], []
    for cell in line.split(","):
        m = _CELL.match(cell.strip())
        if m is None:
            raise SchemaError(f"malformed header cell {cell.strip()!r}")
        labels.append(m.group("label"))
        units.append(m.group("unit"))
    return tuple(labels), tuple(units)


def read_table(path) -> Table:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]

    metadata: dict[str, str] = {}
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        body = lines[i][1:].strip()
        key, sep, value = body.partition(":")
        if not sep:
            raise SchemaError(f"malformed metadata line {lines[i]!r}")
        metadata[key.strip()] = value.strip()
        i += 1

    if i >= len(lines) or not lines[i].strip():
        raise SchemaError("no header line")
    labels, units = _parse_header(lines[i])
    i += 1

    rows = []
    for ln in lines[i:]:
        if not ln.strip():
            continue
        cells = ln.split(",")
        if len(cells) != len(labels):
            raise SchemaError(
                f"row has {len(cells)} cells, header has {len(labels)}: {ln!r}"
            )
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            raise SchemaError(f"non-numeric cell in row {ln!r}") from exc

    data = np.asarray(rows, dtype=float) if rows else np.empty((0, len(labels)))
    data.setflags(write=False)
    return Table(metadata=metadata, labels=labels, units=units, data=data)
