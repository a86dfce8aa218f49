"""Polarization states on the Poincare sphere and the rotations acting on them.

States are unit 3-vectors. Rotations follow the right-hand rule about the
named axis; a pi rotation about x is provided as an exact reflection so that
repeated echo pulses introduce no rounding drift.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import AzimuthUndefinedError, InvalidArgumentError

_UNIT_NORM_TOL = 1e-9
# Renormalize only when rounding has dragged the norm beyond this slack.
_DRIFT_TOL = 1e-12


class Axis(enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"


@dataclass(frozen=True)
class AxisRotation:
    """Rotation by `angle` radians (counterclockwise) about `axis`."""

    axis: Axis
    angle: float

    def __post_init__(self) -> None:
        if not isinstance(self.axis, Axis):
            raise InvalidArgumentError("axis must be an Axis member")
        if not math.isfinite(self.angle):
            raise InvalidArgumentError("rotation angle must be finite")


def _as_vector(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (3,):
        raise InvalidArgumentError("polarization vector must have exactly 3 components")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("polarization vector components must be finite")
    return arr


class PolarizationState:
    """A pure polarization state: a unit vector on the Poincare sphere."""

    __slots__ = ("_r",)

    def __init__(self, r) -> None:
        arr = _as_vector(r)
        norm = math.sqrt(float(arr @ arr))
        if abs(norm - 1.0) > _UNIT_NORM_TOL:
            raise InvalidArgumentError(
                f"state vector must have unit norm, got {norm!r}"
            )
        arr.setflags(write=False)
        self._r = arr

    @property
    def r(self) -> np.ndarray:
        return self._r

    def __repr__(self) -> str:
        return f"PolarizationState({self._r.tolist()!r})"


class PolarizationEnsemble:
    """Running average of polarization vectors; norm may shrink below one."""

    __slots__ = ("_r_avg", "_count")

    def __init__(self, r_avg, count: int) -> None:
        arr = _as_vector(r_avg)
        if not isinstance(count, (int, np.integer)) or isinstance(count, bool):
            raise InvalidArgumentError("ensemble count must be an integer")
        if count < 0:
            raise InvalidArgumentError("ensemble count must be non-negative")
        norm = math.sqrt(float(arr @ arr))
        if norm > 1.0 + _UNIT_NORM_TOL:
            raise InvalidArgumentError(
                f"ensemble average norm must not exceed one, got {norm!r}"
            )
        if count == 0 and norm != 0.0:
            raise InvalidArgumentError("empty ensemble must have a zero average")
        arr.setflags(write=False)
        self._r_avg = arr
        self._count = int(count)

    @classmethod
    def empty(cls) -> "PolarizationEnsemble":
        return cls(np.zeros(3), 0)

    @property
    def r_avg(self) -> np.ndarray:
        return self._r_avg

    @property
    def count(self) -> int:
        return self._count

    def __repr__(self) -> str:
        return f"PolarizationEnsemble({self._r_avg.tolist()!r}, count={self._count})"


def apply_rotation(state: PolarizationState, rotation: AxisRotation) -> PolarizationState:
    """Rotate `state` about the rotation's axis by its angle."""
    x, y, z = state.r
    c = math.cos(rotation.angle)
    s = math.sin(rotation.angle)
    if rotation.axis is Axis.Z:
        out = (x * c - y * s, x * s + y * c, z)
    elif rotation.axis is Axis.X:
        out = (x, y * c - z * s, y * s + z * c)
    else:
        out = (x * c + z * s, y, -x * s + z * c)
    n2 = out[0] * out[0] + out[1] * out[1] + out[2] * out[2]
    if abs(n2 - 1.0) > 2.0 * _DRIFT_TOL:
        inv = 1.0 / math.sqrt(n2)
        out = (out[0] * inv, out[1] * inv, out[2] * inv)
    return PolarizationState(out)


def apply_pi_pulse_x(state: PolarizationState) -> PolarizationState:
    """Pi rotation about x, applied as the exact reflection (x, -y, -z)."""
    x, y, z = state.r
    return PolarizationState((x, -y, -z))


def accumulate(ensemble: PolarizationEnsemble, state: PolarizationState) -> PolarizationEnsemble:
    """Return a new ensemble whose average includes `state`."""
    n = ensemble.count
    mean = (ensemble.r_avg * n + state.r) / (n + 1)
    return PolarizationEnsemble(mean, n + 1)


def fidelity(ensemble: PolarizationEnsemble, desired: PolarizationState) -> float:
    """Overlap between the ensemble average and a target state, in [0, 1]."""
    if ensemble.count < 1:
        raise InvalidArgumentError("fidelity requires at least one accumulated state")
    value = 0.5 * (1.0 + float(ensemble.r_avg @ desired.r))
    return min(1.0, max(0.0, value))


def azimuth(state: PolarizationState) -> float:
    """Equatorial angle atan2(ry, rx) in (-pi, pi]; undefined at the poles."""
    x, y, _ = state.r
    if x * x + y * y <= 1e-18:
        raise AzimuthUndefinedError("azimuth undefined within 1e-9 of a pole")
    value = math.atan2(y, x)
    if value == -math.pi:
        value = math.pi
    return value
