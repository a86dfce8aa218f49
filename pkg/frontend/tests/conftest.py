"""Shared fixtures: small sweep CSVs produced by the real simulator CLI.

The simulator is exercised only as a subprocess; nothing here imports it.
"""

import subprocess
import sys

import pytest

# Reduced grids keep the whole fixture under a few seconds while preserving
# every schema property (columns, metadata keys, grouping flags).
_CASES = {
    "fig3": [
        "fidelity-vs-separation",
        "--realizations", "6",
        "--set", "sweep.separations=log:0.05:1.0:4",
        "--set", "sweep.placement_fractions=0,0.08",
    ],
    "fig4": [
        "signal-vs-detuning",
        "--set", "sweep.cycles=25",
        "--set", "sweep.detuning_fractions=lin:-0.05:0.05:101",
    ],
    "fig5": [
        "rotation-vs-length",
        "--realizations", "5",
        "--set", "sweep.lengths=lin:50:200:4",
        "--set", "sweep.placement_fractions=0,0.12",
    ],
    "fig6": [
        "heatmap",
        "--realizations", "4",
        "--set", "sweep.heatmap_placement_fractions=lin:0:0.12:3",
        "--set", "sweep.heatmap_detuning_fractions=lin:-0.0004:0.0004:7",
    ],
}


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("csvs")
    for fig, args in _CASES.items():
        path = out / f"{fig}.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "ddmagsim", *args, "--out", str(path)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, f"{fig}: {proc.stderr}"
        assert path.exists()
    return out
