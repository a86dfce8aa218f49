"""Derived observables: signal-strength ratios and the detuning envelope."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateRatioError, EnvelopeUndefinedError, InvalidArgumentError


@dataclass(frozen=True)
class SignalStrength:
    theta: float
    theta_max: float
    ratio: float


def signal_strength(theta: float, theta_max: float) -> SignalStrength:
    """Rotation angle relative to the on-resonance reference angle."""
    if not math.isfinite(theta) or not math.isfinite(theta_max):
        raise InvalidArgumentError("angles must be finite")
    if theta_max == 0.0:
        raise DegenerateRatioError("reference rotation angle is zero")
    return SignalStrength(theta=theta, theta_max=theta_max, ratio=theta / theta_max)


def detuning_envelope(delta: float, cycles: int) -> float:
    """Upper bound min(1, 1/(2 pi m |delta|)) on the detuned signal ratio."""
    if isinstance(cycles, bool) or not isinstance(cycles, int) or cycles < 1:
        raise InvalidArgumentError("cycles must be a positive integer")
    if not math.isfinite(delta):
        raise InvalidArgumentError("delta must be finite")
    if delta == 0.0:
        raise EnvelopeUndefinedError("envelope diverges at exact resonance")
    return min(1.0, 1.0 / (2.0 * math.pi * cycles * abs(delta)))
