"""Random birefringence along the fiber, drawn as piecewise-constant phase steps.

A profile assigns one frozen phase increment to each coherence segment.
Segments are either a periodic lattice of equal length, or a renewal chain of
exponential lengths rescaled so the chain covers the fiber exactly. Increment
magnitudes follow one of two normalizations: accumulate as a random walk with
a fixed end-to-end budget, or scale linearly with segment length so the
per-meter rate is budgeted instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidArgumentError, PositionRangeError

_LAYOUTS = ("periodic", "renewal")
_NORMALIZATIONS = ("random-walk", "coherent")


@dataclass(frozen=True)
class NoiseSpec:
    """Statistical description of the birefringent phase disorder."""

    coherence_length: float
    total_phase_std: float
    wavelength: float
    seed: int
    layout: str = "periodic"
    normalization: str = "random-walk"

    def __post_init__(self) -> None:
        if not math.isfinite(self.coherence_length) or self.coherence_length <= 0.0:
            raise InvalidArgumentError("coherence_length must be positive")
        if not math.isfinite(self.total_phase_std) or self.total_phase_std < 0.0:
            raise InvalidArgumentError("total_phase_std must be non-negative")
        if not math.isfinite(self.wavelength) or self.wavelength <= 0.0:
            raise InvalidArgumentError("wavelength must be positive")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)):
            raise InvalidArgumentError("seed must be an integer")
        if self.layout not in _LAYOUTS:
            raise InvalidArgumentError(
                f"layout must be one of {_LAYOUTS}, got {self.layout!r}"
            )
        if self.normalization not in _NORMALIZATIONS:
            raise InvalidArgumentError(
                f"normalization must be one of {_NORMALIZATIONS}, got {self.normalization!r}"
            )


@dataclass(frozen=True)
class PhaseProfile:
    """One frozen realization of the disorder.

    `phases[j]` is the phase picked up across segment j. For the periodic
    layout all segments share `segment_length`; a renewal profile also carries
    explicit `boundaries` (length N+1, starting at 0.0).
    """

    segment_length: float
    phases: np.ndarray
    boundaries: Optional[np.ndarray] = field(default=None)

    def __post_init__(self) -> None:
        if not math.isfinite(self.segment_length) or self.segment_length <= 0.0:
            raise InvalidArgumentError("segment_length must be positive")
        phases = np.asarray(self.phases, dtype=np.float64)
        if phases.ndim != 1 or phases.size == 0:
            raise InvalidArgumentError("phases must be a non-empty 1-D array")
        if not np.all(np.isfinite(phases)):
            raise InvalidArgumentError("phases must be finite")
        phases.setflags(write=False)
        object.__setattr__(self, "phases", phases)
        if self.boundaries is not None:
            bounds = np.asarray(self.boundaries, dtype=np.float64)
            if bounds.shape != (phases.size + 1,):
                raise InvalidArgumentError(
                    "boundaries must have exactly one more entry than phases"
                )
            if bounds[0] != 0.0:
                raise InvalidArgumentError("boundaries must start at zero")
            if not np.all(np.diff(bounds) > 0.0):
                raise InvalidArgumentError("boundaries must be strictly increasing")
            bounds.setflags(write=False)
            object.__setattr__(self, "boundaries", bounds)

    def covered_length(self) -> float:
        if self.boundaries is not None:
            return float(self.boundaries[-1])
        return self.phases.size * self.segment_length


def sample_profile(spec: NoiseSpec, fiber_length: float) -> PhaseProfile:
    """Draw one disorder realization covering at least `fiber_length`."""
    if not math.isfinite(fiber_length) or fiber_length <= 0.0:
        raise InvalidArgumentError("fiber_length must be positive")
    lc = spec.coherence_length
    count = math.ceil(fiber_length / lc)
    rng = np.random.Generator(np.random.Philox(spec.seed))

    if spec.layout == "renewal":
        # Draw order is fixed: segment lengths first, then the phase normals.
        lengths = rng.exponential(lc, count)
        lengths = np.maximum(lengths, 1e-12 * lc)
        total = count * lc
        lengths = lengths * (total / lengths.sum())
        boundaries = np.concatenate(([0.0], np.cumsum(lengths)))
        boundaries[-1] = total
        seg_lengths = np.diff(boundaries)
        if spec.normalization == "coherent":
            stds = (spec.total_phase_std / fiber_length) * seg_lengths
        else:
            stds = spec.total_phase_std * np.sqrt(seg_lengths / total)
        phases = stds * rng.standard_normal(count)
        return PhaseProfile(segment_length=lc, phases=phases, boundaries=boundaries)

    if spec.normalization == "coherent":
        std = (spec.total_phase_std / fiber_length) * lc
    else:
        std = spec.total_phase_std / math.sqrt(count)
    phases = std * rng.standard_normal(count)
    return PhaseProfile(segment_length=lc, phases=phases)


def phase_at(profile: PhaseProfile, position: float) -> float:
    """Phase increment of the segment containing `position`."""
    if not math.isfinite(position) or position < 0.0:
        raise PositionRangeError(f"position {position!r} is before the fiber input")
    if profile.boundaries is not None:
        bounds = profile.boundaries
        if position >= bounds[-1]:
            raise PositionRangeError(
                f"position {position!r} is beyond the covered length {bounds[-1]!r}"
            )
        idx = int(np.searchsorted(bounds, position, side="right")) - 1
        return float(profile.phases[idx])
    idx = int(position // profile.segment_length)
    if idx >= profile.phases.size:
        raise PositionRangeError(
            f"position {position!r} is beyond the covered length "
            f"{profile.covered_length()!r}"
        )
    return float(profile.phases[idx])
