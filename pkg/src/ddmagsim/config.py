"""Run configuration: key=value text with dotted keys, merged over defaults.

A config file is plain text, one `section.key = value` per line; `#` starts a
comment. CLI overrides use the same `key=value` form and win over the file.
Grids accept `lin:a:b:n`, `log:a:b:n`, or a comma list; a symmetric odd
linear grid snaps its midpoint to exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from .engine.core import FiberSpec
from .errors import ConfigError, InvalidArgumentError
from .field import FieldSpec, OpticsSpec
from .noise import NoiseSpec


def _parse_float(value: str) -> float:
    out = float(value)
    if not math.isfinite(out):
        raise ValueError("value must be finite")
    return out


def _parse_int(value: str) -> int:
    return int(value, 10)


def _parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    raise ValueError(f"expected true or false, got {value!r}")


def _parse_string(value: str) -> str:
    return value


def _parse_step(value: str):
    if value.strip().lower() == "auto":
        return None
    return _parse_float(value)


def _parse_grid(value: str) -> List[float]:
    text = value.strip()
    if text.startswith(("lin:", "log:")):
        parts = text.split(":")
        if len(parts) != 4:
            raise ValueError(f"grid spec must be kind:start:stop:count, got {value!r}")
        kind, a_s, b_s, n_s = parts
        a, b, n = float(a_s), float(b_s), int(n_s, 10)
        if n < 2:
            raise ValueError("grid needs at least two points")
        if kind == "lin":
            grid = np.linspace(a, b, n)
            if n % 2 == 1 and a == -b:
                grid[n // 2] = 0.0
        else:
            if a <= 0.0 or b <= 0.0:
                raise ValueError("log grid endpoints must be positive")
            grid = np.geomspace(a, b, n)
        values = [float(x) for x in grid]
    else:
        values = [float(item) for item in text.split(",")]
    if not all(math.isfinite(v) for v in values):
        raise ValueError("grid values must be finite")
    return values


# key -> (converter, default string). Insertion order fixes the CSV metadata order.
_SCHEMA = {
    "optics.verdet": (_parse_float, "-32.0"),
    "optics.refractive_index": (_parse_float, "1.45"),
    "optics.waveplate_separation": (_parse_float, "0.1"),
    "noise.coherence_length": (_parse_float, "3.0"),
    "noise.total_phase_std": (_parse_float, "100.0"),
    "noise.wavelength": (_parse_float, "1.064e-6"),
    "noise.layout": (_parse_string, "renewal"),
    "noise.normalization": (_parse_string, "coherent"),
    "noise.seed": (_parse_int, "0"),
    "field.amplitude": (_parse_float, "1e-5"),
    "field.detuning_fraction": (_parse_float, "0.0"),
    "field.phase_offset": (_parse_float, "0.0"),
    "fiber.length": (_parse_float, "500.0"),
    "fiber.placement_error_fraction": (_parse_float, "0.0"),
    "fiber.dd_enabled": (_parse_bool, "true"),
    "fiber.integration_step": (_parse_step, "auto"),
    "run.master_seed": (_parse_int, "20260816"),
    "run.realizations": (_parse_int, "1000"),
    "sweep.separations": (_parse_grid, "log:0.02:3.0:25"),
    "sweep.placement_fractions": (_parse_grid, "0,0.04,0.08,0.12"),
    "sweep.detuning_fractions": (_parse_grid, "lin:-0.05:0.05:501"),
    "sweep.cycles": (_parse_int, "600"),
    "sweep.lengths": (_parse_grid, "lin:50:500:10"),
    "sweep.heatmap_placement_fractions": (_parse_grid, "lin:0:0.12:5"),
    "sweep.heatmap_detuning_fractions": (_parse_grid, "lin:-0.0004:0.0004:41"),
}

CONFIG_KEYS = tuple(_SCHEMA)


@dataclass(frozen=True)
class SweepGrids:
    separations: List[float]
    placement_fractions: List[float]
    detuning_fractions: List[float]
    cycles: int
    lengths: List[float]
    heatmap_placement_fractions: List[float]
    heatmap_detuning_fractions: List[float]


@dataclass(frozen=True)
class RunConfig:
    optics: OpticsSpec
    noise: NoiseSpec
    field: FieldSpec
    fiber: FiberSpec
    master_seed: int
    realizations: int
    sweep: SweepGrids
    raw: Dict[str, str]


def _assign(merged: Dict[str, str], key: str, value: str, origin: str) -> None:
    if key not in merged:
        raise ConfigError(f"unknown configuration key {key!r} in {origin}")
    merged[key] = value


def parse_config(file_contents: str, cli_overrides) -> RunConfig:
    """Merge defaults, file contents, and overrides into a validated RunConfig."""
    merged = {key: default for key, (_, default) in _SCHEMA.items()}
    if file_contents:
        for line_no, raw_line in enumerate(file_contents.splitlines(), start=1):
            line = raw_line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(
                    f"line {line_no}: expected key = value, got {raw_line.strip()!r}"
                )
            key, _, value = line.partition("=")
            _assign(merged, key.strip(), value.strip(), f"line {line_no}")
    for item in cli_overrides or []:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, _, value = item.partition("=")
        _assign(merged, key.strip(), value.strip(), "--set")

    typed = {}
    for key, (convert, _) in _SCHEMA.items():
        try:
            typed[key] = convert(merged[key])
        except (ValueError, OverflowError) as exc:
            raise ConfigError(
                f"invalid value for {key}: {merged[key]!r} ({exc})"
            ) from None

    try:
        optics = OpticsSpec(
            verdet=typed["optics.verdet"],
            refractive_index=typed["optics.refractive_index"],
            waveplate_separation=typed["optics.waveplate_separation"],
        )
    except InvalidArgumentError as exc:
        raise ConfigError(f"optics.*: {exc}") from None
    try:
        noise = NoiseSpec(
            coherence_length=typed["noise.coherence_length"],
            total_phase_std=typed["noise.total_phase_std"],
            wavelength=typed["noise.wavelength"],
            seed=typed["noise.seed"],
            layout=typed["noise.layout"],
            normalization=typed["noise.normalization"],
        )
    except InvalidArgumentError as exc:
        raise ConfigError(f"noise.*: {exc}") from None
    try:
        field = FieldSpec(
            amplitude=typed["field.amplitude"],
            detuning_fraction=typed["field.detuning_fraction"],
            phase_offset=typed["field.phase_offset"],
        )
    except InvalidArgumentError as exc:
        raise ConfigError(f"field.*: {exc}") from None
    step = typed["fiber.integration_step"]
    if step is None:
        step = min(
            optics.waveplate_separation / 50.0,
            noise.coherence_length / 50.0,
        )
    try:
        fiber = FiberSpec(
            length=typed["fiber.length"],
            optics=optics,
            placement_error_fraction=typed["fiber.placement_error_fraction"],
            dd_enabled=typed["fiber.dd_enabled"],
            integration_step=step,
        )
    except InvalidArgumentError as exc:
        raise ConfigError(f"fiber.*: {exc}") from None

    if typed["run.realizations"] < 1:
        raise ConfigError("run.realizations must be at least one")
    if typed["sweep.cycles"] < 1:
        raise ConfigError("sweep.cycles must be at least one")

    sweep = SweepGrids(
        separations=typed["sweep.separations"],
        placement_fractions=typed["sweep.placement_fractions"],
        detuning_fractions=typed["sweep.detuning_fractions"],
        cycles=typed["sweep.cycles"],
        lengths=typed["sweep.lengths"],
        heatmap_placement_fractions=typed["sweep.heatmap_placement_fractions"],
        heatmap_detuning_fractions=typed["sweep.heatmap_detuning_fractions"],
    )
    return RunConfig(
        optics=optics,
        noise=noise,
        field=field,
        fiber=fiber,
        master_seed=typed["run.master_seed"],
        realizations=typed["run.realizations"],
        sweep=sweep,
        raw=merged,
    )
