"""AC magnetic field, fiber optics constants, and the Faraday rotation law."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgumentError

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact


@dataclass(frozen=True)
class OpticsSpec:
    """Fixed optical parameters of the fiber and its waveplate lattice."""

    verdet: float
    refractive_index: float
    waveplate_separation: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.verdet):
            raise InvalidArgumentError("verdet must be finite")
        if not math.isfinite(self.refractive_index) or self.refractive_index < 1.0:
            raise InvalidArgumentError("refractive_index must be >= 1")
        if not math.isfinite(self.waveplate_separation) or self.waveplate_separation <= 0.0:
            raise InvalidArgumentError("waveplate_separation must be positive")


@dataclass(frozen=True)
class FieldSpec:
    """Sinusoidal field B(t) = amplitude * sin((1 + detuning) * w0 * t + phase)."""

    amplitude: float
    detuning_fraction: float = 0.0
    phase_offset: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.amplitude) or self.amplitude < 0.0:
            raise InvalidArgumentError("amplitude must be non-negative")
        if not math.isfinite(self.detuning_fraction) or self.detuning_fraction <= -1.0:
            raise InvalidArgumentError("detuning_fraction must exceed -1")
        if not math.isfinite(self.phase_offset):
            raise InvalidArgumentError("phase_offset must be finite")


def characteristic_frequency(optics: OpticsSpec) -> float:
    """Angular frequency (rad/s) whose half period equals one plate transit."""
    return math.pi * SPEED_OF_LIGHT / (
        optics.waveplate_separation * optics.refractive_index
    )


def field_value(field: FieldSpec, optics: OpticsSpec, t: float) -> float:
    """Field amplitude at laboratory time t."""
    if not math.isfinite(t):
        raise InvalidArgumentError("time must be finite")
    w = (1.0 + field.detuning_fraction) * characteristic_frequency(optics)
    return field.amplitude * math.sin(w * t + field.phase_offset)


def faraday_rotation_angle(verdet: float, field_strength: float, length: float) -> float:
    """Polarization rotation (rad) for a uniform field over a path length."""
    return verdet * field_strength * length
