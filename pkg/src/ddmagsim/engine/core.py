"""Fiber propagation engine.

A realization walks the fiber once, event by event: half-waveplates toggle the
sign of every subsequent rotation, and each stretch between events contributes
its exactly integrated field rotation plus its share of the frozen
birefringence phase. Because all rotations commute up to the toggling, the
final state collapses to a single equatorial angle; the input state is +x.

Backends: a compiled kernel (preferred) and a pure-numpy fallback compute the
same walk. Selection honors DDMAGSIM_BACKEND ("auto", "kernel", "python") at
call time. Ensembles are embarrassingly parallel over fixed-size realization
blocks, so results are byte-identical for any DDMAGSIM_THREADS setting.
"""

from __future__ import annotations

import dataclasses
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..bloch import PolarizationEnsemble, PolarizationState
from ..errors import InvalidArgumentError, ProfileCoverageError
from ..field import FieldSpec, OpticsSpec
from ..noise import NoiseSpec, PhaseProfile, sample_profile
from . import fallback

try:
    from . import _kernel
except ImportError:  # pragma: no cover - exercised only when unbuilt
    _kernel = None

# Realizations are dispatched to threads in fixed blocks so the work split
# never depends on the worker count.
BLOCK = 64

_MASK = (1 << 64) - 1


def derive_seed(*parts: int) -> int:
    """Mix integer parts into a 64-bit stream seed (splitmix-style chain)."""
    h = 0x9E3779B97F4A7C15
    for part in parts:
        h = (h + (int(part) & _MASK)) & _MASK
        h ^= h >> 30
        h = (h * 0xBF58476D1CE4E5B9) & _MASK
        h ^= h >> 27
        h = (h * 0x94D049BB133111EB) & _MASK
        h ^= h >> 31
    return h


def kernel_available() -> bool:
    return _kernel is not None


def active_backend() -> str:
    """Backend that propagate() will use, honoring DDMAGSIM_BACKEND."""
    env = os.environ.get("DDMAGSIM_BACKEND")
    if env is None or env in ("", "auto"):
        return "kernel" if _kernel is not None else "python"
    if env == "kernel":
        if _kernel is None:
            raise ValueError("DDMAGSIM_BACKEND=kernel but the compiled kernel is not built")
        return "kernel"
    if env == "python":
        return "python"
    raise ValueError(f"unrecognized DDMAGSIM_BACKEND value {env!r}")


def _resolve_backend(backend: Optional[str]) -> str:
    if backend is None:
        return active_backend()
    if backend == "kernel":
        if _kernel is None:
            raise ValueError("compiled kernel requested but not built")
        return "kernel"
    if backend == "python":
        return "python"
    raise ValueError(f"unrecognized backend {backend!r}")


def _worker_count() -> int:
    env = os.environ.get("DDMAGSIM_THREADS")
    if env is None or env.strip() == "":
        return max(1, os.cpu_count() or 1)
    try:
        value = int(env)
    except ValueError:
        raise ValueError(f"DDMAGSIM_THREADS must be an integer, got {env!r}") from None
    if value <= 0:
        return max(1, os.cpu_count() or 1)
    return value


def _run_blocks(n: int, fill) -> None:
    """Run fill(start, stop) over [0, n) in BLOCK-sized index ranges."""
    starts = range(0, n, BLOCK)
    workers = min(_worker_count(), len(starts))
    if workers <= 1:
        fill(0, n)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fill, s, min(s + BLOCK, n)) for s in starts]
        for future in futures:
            future.result()


@dataclass(frozen=True)
class FiberSpec:
    """Fiber geometry plus the waveplate lattice policy."""

    length: float
    optics: OpticsSpec
    placement_error_fraction: float = 0.0
    dd_enabled: bool = True
    integration_step: Optional[float] = None

    def __post_init__(self) -> None:
        if not isinstance(self.optics, OpticsSpec):
            raise InvalidArgumentError("optics must be an OpticsSpec")
        if not math.isfinite(self.length) or self.length <= 0.0:
            raise InvalidArgumentError("fiber length must be positive")
        pf = self.placement_error_fraction
        if not math.isfinite(pf) or pf < 0.0 or pf >= 0.5:
            raise InvalidArgumentError("placement_error_fraction must lie in [0, 0.5)")
        if not isinstance(self.dd_enabled, bool):
            raise InvalidArgumentError("dd_enabled must be a bool")
        y = self.optics.waveplate_separation
        step = self.integration_step
        if step is None:
            step = y / 50.0
        else:
            step = float(step)
            if not math.isfinite(step) or step <= 0.0:
                raise InvalidArgumentError("integration_step must be positive")
            if step > y / 20.0:
                raise InvalidArgumentError(
                    "integration_step must not exceed one twentieth of the "
                    "waveplate separation"
                )
        object.__setattr__(self, "integration_step", step)


class WaveplateLattice:
    """Strictly increasing plate positions inside the open fiber interval."""

    __slots__ = ("_positions",)

    def __init__(self, positions) -> None:
        arr = np.ascontiguousarray(positions, dtype=np.float64)
        if arr.ndim != 1:
            raise InvalidArgumentError("positions must be a 1-D array")
        if arr.size:
            if not np.all(np.isfinite(arr)):
                raise InvalidArgumentError("positions must be finite")
            if arr[0] <= 0.0:
                raise InvalidArgumentError("positions must be positive")
            if not np.all(np.diff(arr) > 0.0):
                raise InvalidArgumentError("positions must be strictly increasing")
        arr.setflags(write=False)
        self._positions = arr

    @property
    def positions(self) -> np.ndarray:
        return self._positions

    def __len__(self) -> int:
        return self._positions.size

    def __repr__(self) -> str:
        return f"WaveplateLattice(count={self._positions.size})"


@dataclass(frozen=True)
class RealizationResult:
    final_state: PolarizationState
    toggled_azimuth: float
    trajectory: Optional[list]


@dataclass(frozen=True)
class EnsembleResult:
    ensemble: PolarizationEnsemble
    mean_toggled_azimuth: float
    desired_state: PolarizationState
    fidelity_stderr: float
    azimuth_stderr: float


def build_lattice(fiber: FiberSpec, seed: int) -> WaveplateLattice:
    """Nominal lattice k*y with Gaussian placement jitter, interior plates only."""
    if not fiber.dd_enabled:
        return WaveplateLattice(np.empty(0))
    y = fiber.optics.waveplate_separation
    length = fiber.length
    count = int(length / y + 1e-9)
    # A plate landing on the exit face (within float slack) is dropped.
    if count >= 1 and count * y > length * (1.0 - 1e-12):
        count -= 1
    if count <= 0:
        return WaveplateLattice(np.empty(0))
    positions = np.arange(1.0, count + 1.0) * y
    pf = fiber.placement_error_fraction
    if pf > 0.0:
        rng = np.random.Generator(np.random.Philox(seed))
        positions = positions + rng.normal(0.0, pf * y, count)
        positions.sort()
        step = fiber.integration_step
        np.clip(positions, step, length - step, out=positions)
        for i in range(1, count):
            if positions[i] <= positions[i - 1]:
                positions[i] = np.nextafter(positions[i - 1], np.inf)
    return WaveplateLattice(positions)


def _segment_arrays(profile: PhaseProfile, length: float):
    """Interior segment boundaries (< length) and per-segment phase rates."""
    phases = profile.phases
    if profile.boundaries is not None:
        bounds = profile.boundaries
        inner = bounds[1:-1]
        rates = phases / np.diff(bounds)
    else:
        inner = profile.segment_length * np.arange(1.0, phases.size)
        rates = phases / profile.segment_length
    if inner.size and inner[-1] >= length:
        inner = inner[inner < length]
    return np.ascontiguousarray(inner), np.ascontiguousarray(rates)


def propagate(
    fiber: FiberSpec,
    field: FieldSpec,
    profile: PhaseProfile,
    lattice: WaveplateLattice,
    record_trajectory: bool = False,
    backend: Optional[str] = None,
) -> RealizationResult:
    """Propagate the +x input state through one disorder realization."""
    name = _resolve_backend(backend)
    length = fiber.length
    if profile.covered_length() < length * (1.0 - 1e-12):
        raise ProfileCoverageError(
            f"profile covers {profile.covered_length()!r} of {length!r} m"
        )
    optics = fiber.optics
    k = (1.0 + field.detuning_fraction) * math.pi / optics.waveplate_separation
    coef = 0.0 if field.amplitude == 0.0 else optics.verdet * field.amplitude / k
    inner, rates = _segment_arrays(profile, length)
    plates = lattice.positions
    trajectory = None
    if record_trajectory:
        t_sig, t_total, parity, trajectory = fallback.walk_trajectory(
            plates, inner, rates, coef, k, field.phase_offset, length,
            fiber.integration_step,
        )
    elif name == "kernel":
        t_sig, t_total, parity = _kernel.walk(
            plates, inner, rates, coef, k, field.phase_offset, length
        )
    else:
        t_sig, t_total, parity = fallback.walk(
            plates, inner, rates, coef, k, field.phase_offset, length
        )
    final_angle = t_total if parity % 2 == 0 else -t_total
    state = PolarizationState(
        (math.cos(final_angle), math.sin(final_angle), 0.0)
    )
    return RealizationResult(
        final_state=state, toggled_azimuth=t_sig, trajectory=trajectory
    )


def run_ensemble(
    fiber: FiberSpec,
    field: FieldSpec,
    noise: NoiseSpec,
    realizations: int,
    master_seed: int,
) -> EnsembleResult:
    """Simulate independent disorder realizations and average the outcomes.

    Realization i draws its phase profile from stream (master_seed, i, 0) and
    its plate placement from stream (master_seed, i, 1); the `noise.seed`
    field is ignored here. The desired state is the noiseless, perfectly
    placed propagation of the same fiber.
    """
    if isinstance(realizations, bool) or not isinstance(realizations, (int, np.integer)):
        raise InvalidArgumentError("realizations must be an integer")
    if realizations < 1:
        raise InvalidArgumentError("realizations must be at least one")
    n = int(realizations)
    backend = _resolve_backend(None)
    length = fiber.length
    vectors = np.empty((n, 3))
    toggled = np.empty(n)

    def fill(start: int, stop: int) -> None:
        for i in range(start, stop):
            spec_i = dataclasses.replace(noise, seed=derive_seed(master_seed, i, 0))
            profile = sample_profile(spec_i, length)
            lat = build_lattice(fiber, derive_seed(master_seed, i, 1))
            res = propagate(fiber, field, profile, lat, False, backend=backend)
            vectors[i] = res.final_state.r
            toggled[i] = res.toggled_azimuth

    _run_blocks(n, fill)

    fiber_ref = dataclasses.replace(fiber, placement_error_fraction=0.0)
    ref_profile = PhaseProfile(segment_length=length, phases=np.zeros(1))
    desired = propagate(
        fiber_ref, field, ref_profile, build_lattice(fiber_ref, 0), False,
        backend=backend,
    ).final_state

    r_avg = vectors.mean(axis=0)
    ensemble = PolarizationEnsemble(r_avg, n)
    mean_toggled = float(toggled.mean())
    if n > 1:
        fidelities = 0.5 * (1.0 + vectors @ desired.r)
        fidelity_stderr = float(fidelities.std(ddof=1) / math.sqrt(n))
        azimuth_stderr = float(toggled.std(ddof=1) / math.sqrt(n))
    else:
        fidelity_stderr = 0.0
        azimuth_stderr = 0.0
    return EnsembleResult(
        ensemble=ensemble,
        mean_toggled_azimuth=mean_toggled,
        desired_state=desired,
        fidelity_stderr=fidelity_stderr,
        azimuth_stderr=azimuth_stderr,
    )
