"""Command line front end: run one experiment, write one CSV.

Exit codes: 0 on success, 2 for configuration problems (unknown experiment,
unreadable config file, bad keys or values), 1 for runtime or output errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .config import CONFIG_KEYS, RunConfig, parse_config
from .errors import ConfigError, SimulationError
from .experiments import (
    ExperimentBase,
    SweepResult,
    single_run,
    sweep_fidelity_vs_separation,
    sweep_heatmap,
    sweep_rotation_vs_length,
    sweep_signal_vs_detuning,
)

_CANONICAL = (
    "fidelity-vs-separation",
    "signal-vs-detuning",
    "rotation-vs-length",
    "heatmap",
    "single-run",
)

_ALIASES = {
    "fig3": "fidelity-vs-separation",
    "fig4": "signal-vs-detuning",
    "fig5": "rotation-vs-length",
    "fig6": "heatmap",
    "single": "single-run",
}


def write_csv(result: SweepResult, path: str) -> None:
    """Write metadata lines, a label[unit] header, and 17-digit rows (LF, UTF-8)."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        for key, value in result.metadata.items():
            handle.write(f"# {key}: {value}\n")
        handle.write(
            ",".join(f"{label}[{unit}]" for label, unit in result.columns) + "\n"
        )
        for row in result.rows:
            handle.write(",".join("%.17g" % value for value in row) + "\n")


def _dispatch(name: str, cfg: RunConfig) -> SweepResult:
    base = ExperimentBase(
        fiber=cfg.fiber,
        field=cfg.field,
        noise=cfg.noise,
        master_seed=cfg.master_seed,
        realizations=cfg.realizations,
    )
    if name == "fidelity-vs-separation":
        return sweep_fidelity_vs_separation(
            base, cfg.sweep.separations, cfg.sweep.placement_fractions,
            cfg.realizations,
        )
    if name == "signal-vs-detuning":
        return sweep_signal_vs_detuning(
            base, cfg.sweep.detuning_fractions, cfg.sweep.cycles
        )
    if name == "rotation-vs-length":
        return sweep_rotation_vs_length(
            base, cfg.sweep.lengths, cfg.sweep.placement_fractions
        )
    if name == "heatmap":
        return sweep_heatmap(
            base, cfg.sweep.heatmap_placement_fractions,
            cfg.sweep.heatmap_detuning_fractions,
        )
    return single_run(base)


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ddmagsim",
        description="Simulate polarization transport and write one CSV result.",
    )
    parser.add_argument("experiment",
                        help="one of %s (aliases: %s)"
                        % (", ".join(_CANONICAL), ", ".join(_ALIASES)))
    parser.add_argument("--config", help="path to a key=value configuration file")
    parser.add_argument("--set", action="append", default=[], dest="overrides",
                        metavar="KEY=VALUE", help="override one configuration key")
    parser.add_argument("--out", help="output CSV path (default <experiment>.csv)")
    parser.add_argument("--seed", type=int, help="override run.master_seed")
    parser.add_argument("--realizations", type=int,
                        help="override run.realizations")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    name = _ALIASES.get(args.experiment, args.experiment)
    if name not in _CANONICAL:
        print(
            "unknown experiment %r; expected one of %s (aliases: %s)"
            % (args.experiment, ", ".join(_CANONICAL), ", ".join(_ALIASES)),
            file=sys.stderr,
        )
        return 2

    contents = ""
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                contents = handle.read()
        except OSError as exc:
            print(f"cannot read config file {args.config}: {exc}", file=sys.stderr)
            return 2

    overrides = list(args.overrides)
    if args.seed is not None:
        overrides.append(f"run.master_seed={args.seed}")
    if args.realizations is not None:
        overrides.append(f"run.realizations={args.realizations}")

    try:
        cfg = parse_config(contents, overrides)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    out_path = args.out or f"{name}.csv"
    try:
        result = _dispatch(name, cfg)
        # Full effective configuration goes into the metadata block so a run
        # is reconstructible from its CSV alone.
        for key in CONFIG_KEYS:
            result.metadata[key] = cfg.raw[key]
        write_csv(result, out_path)
    except (SimulationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
