"""Sweep drivers producing tabular results for each headline experiment.

Every sweep derives its per-point random streams from the base master seed, a
fixed experiment tag, and the point's position in the sweep, so a result is a
pure function of (base, grids). Sweeps that only report the toggled rotation
skip birefringence sampling entirely: the toggled signal excludes the noise
phases by construction, and the lattice stream is independent of the profile
stream, so the statistics are identical to a full simulation.
"""

from __future__ import annotations

import dataclasses
import datetime
import os
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from ._version import __version__
from .bloch import fidelity
from .engine import core
from .engine.core import (
    FiberSpec,
    build_lattice,
    derive_seed,
    propagate,
    run_ensemble,
)
from .errors import DegenerateRatioError, InvalidArgumentError
from .field import FieldSpec
from .metrics import detuning_envelope, signal_strength
from .noise import NoiseSpec, PhaseProfile, sample_profile

# Stream tags keep the per-experiment seed spaces disjoint.
_TAG_FIDELITY = 1
_TAG_DETUNING = 2
_TAG_ROTATION = 3
_TAG_HEATMAP = 4
_TAG_SINGLE = 5


@dataclass(frozen=True)
class ExperimentBase:
    """Shared physical configuration a sweep varies point by point."""

    fiber: FiberSpec
    field: FieldSpec
    noise: NoiseSpec
    master_seed: int
    realizations: int


@dataclass
class SweepResult:
    columns: List[Tuple[str, str]]
    rows: List[tuple]
    metadata: Dict[str, str]
    name: str = ""


_revision_cache = None


def _revision() -> str:
    """Identifier of the code that produced a result, for CSV provenance."""
    global _revision_cache
    if _revision_cache is None:
        value = os.environ.get("DDMAGSIM_REVISION")
        if not value:
            try:
                proc = subprocess.run(
                    ["git", "-C", str(Path(__file__).resolve().parent),
                     "rev-parse", "--short", "HEAD"],
                    capture_output=True, text=True, timeout=10,
                )
                value = proc.stdout.strip() if proc.returncode == 0 else ""
            except OSError:
                value = ""
        _revision_cache = value or __version__
    return _revision_cache


def _core_metadata(name: str, base: ExperimentBase, realizations: int) -> Dict[str, str]:
    return {
        "experiment": name,
        "master_seed": str(base.master_seed),
        "realizations": str(realizations),
        "backend": core.active_backend(),
        "revision": _revision(),
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _fiber_for_point(template: FiberSpec, *, length=None, separation=None,
                     placement=None, dd_enabled=None) -> FiberSpec:
    """Per-point fiber; the integration step re-resolves for the new geometry."""
    optics = template.optics
    if separation is not None:
        optics = dataclasses.replace(optics, waveplate_separation=separation)
    return FiberSpec(
        length=template.length if length is None else length,
        optics=optics,
        placement_error_fraction=(
            template.placement_error_fraction if placement is None else placement
        ),
        dd_enabled=template.dd_enabled if dd_enabled is None else dd_enabled,
        integration_step=None,
    )


def _uniform_zero_profile(length: float) -> PhaseProfile:
    return PhaseProfile(segment_length=length, phases=np.zeros(1))


def _toggled_stats(fiber: FiberSpec, fld: FieldSpec, point_seed: int,
                   realizations: int, backend: str) -> Tuple[float, float]:
    """Mean and stderr of the toggled rotation over lattice realizations."""
    n = int(realizations)
    toggled = np.empty(n)
    profile = _uniform_zero_profile(fiber.length)

    def fill(start: int, stop: int) -> None:
        for i in range(start, stop):
            lat = build_lattice(fiber, derive_seed(point_seed, i, 1))
            toggled[i] = propagate(
                fiber, fld, profile, lat, False, backend=backend
            ).toggled_azimuth

    core._run_blocks(n, fill)
    mean = float(toggled.mean())
    if n > 1:
        stderr = float(toggled.std(ddof=1) / np.sqrt(n))
    else:
        stderr = 0.0
    return mean, stderr


def sweep_fidelity_vs_separation(
    base: ExperimentBase,
    separations,
    placement_fractions,
    realizations: int,
) -> SweepResult:
    """Ensemble fidelity against plate separation, one curve per jitter level.

    A single no-DD baseline ensemble is run once and its row replicated at
    every separation so renderers can draw the flat reference line.
    """
    seps = [float(s) for s in separations]
    pfs = [float(p) for p in placement_fractions]
    n = int(realizations)
    if not seps or not pfs:
        raise InvalidArgumentError("sweep grids must be non-empty")
    rows: List[tuple] = []
    job = 0
    for sep in seps:
        for pf in pfs:
            fib = _fiber_for_point(base.fiber, separation=sep, placement=pf,
                                   dd_enabled=True)
            out = run_ensemble(
                fib, base.field, base.noise, n,
                derive_seed(base.master_seed, _TAG_FIDELITY, job),
            )
            f = fidelity(out.ensemble, out.desired_state)
            rows.append((sep, pf, 1.0, float(f), float(out.fidelity_stderr)))
            job += 1
    baseline_fiber = _fiber_for_point(base.fiber, placement=0.0, dd_enabled=False)
    out0 = run_ensemble(
        baseline_fiber, base.field, base.noise, n,
        derive_seed(base.master_seed, _TAG_FIDELITY, job),
    )
    f0 = fidelity(out0.ensemble, out0.desired_state)
    for sep in seps:
        rows.append((sep, 0.0, 0.0, float(f0), float(out0.fidelity_stderr)))
    return SweepResult(
        name="fidelity-vs-separation",
        columns=[
            ("separation", "m"),
            ("placement_fraction", "-"),
            ("dd", "-"),
            ("fidelity", "-"),
            ("fidelity_stderr", "-"),
        ],
        rows=rows,
        metadata=_core_metadata("fidelity-vs-separation", base, n),
    )


def sweep_signal_vs_detuning(base: ExperimentBase, detunings, cycles: int) -> SweepResult:
    """Noiseless detuned signal ratio over a fiber spanning `cycles` cycles.

    The sweep forces a perfectly placed lattice and zero birefringence, so the
    rows depend only on the grid and the optics, never on any seed.
    """
    if isinstance(cycles, bool) or not isinstance(cycles, (int, np.integer)) or cycles < 1:
        raise InvalidArgumentError("cycles must be a positive integer")
    m = int(cycles)
    y = base.fiber.optics.waveplate_separation
    length = 2.0 * m * y
    fiber = _fiber_for_point(base.fiber, length=length, placement=0.0,
                             dd_enabled=True)
    profile = _uniform_zero_profile(length)
    lattice = build_lattice(fiber, 0)
    backend = core.active_backend()

    def theta_at(delta: float) -> float:
        fld = dataclasses.replace(base.field, detuning_fraction=delta)
        return propagate(
            fiber, fld, profile, lattice, False, backend=backend
        ).toggled_azimuth

    theta_max = theta_at(0.0)
    rows: List[tuple] = []
    for d in detunings:
        d = float(d)
        theta = theta_max if d == 0.0 else theta_at(d)
        ratio = signal_strength(theta, theta_max).ratio
        env = 1.0 if d == 0.0 else detuning_envelope(d, m)
        rows.append((d, float(ratio), float(env)))
    return SweepResult(
        name="signal-vs-detuning",
        columns=[
            ("detuning_fraction", "-"),
            ("ratio", "-"),
            ("envelope", "-"),
        ],
        rows=rows,
        metadata=_core_metadata("signal-vs-detuning", base, 1),
    )


def sweep_rotation_vs_length(base: ExperimentBase, lengths, placement_fractions) -> SweepResult:
    """Accumulated toggled rotation against fiber length.

    Emits the exact noiseless line (ideal=1 rows) and, per placement level,
    the measured mean and scatter over jittered lattices (ideal=0 rows).
    """
    lens = [float(v) for v in lengths]
    pfs = [float(p) for p in placement_fractions]
    if not lens or not pfs:
        raise InvalidArgumentError("sweep grids must be non-empty")
    backend = core.active_backend()
    rows: List[tuple] = []
    for length in lens:
        fib = _fiber_for_point(base.fiber, length=length, placement=0.0,
                               dd_enabled=True)
        res = propagate(
            fib, base.field, _uniform_zero_profile(length),
            build_lattice(fib, 0), False, backend=backend,
        )
        rows.append((length, 0.0, 1.0, float(res.toggled_azimuth), 0.0))
    job = 0
    for length in lens:
        for pf in pfs:
            fib = _fiber_for_point(base.fiber, length=length, placement=pf,
                                   dd_enabled=True)
            mean, stderr = _toggled_stats(
                fib, base.field,
                derive_seed(base.master_seed, _TAG_ROTATION, job),
                base.realizations, backend,
            )
            rows.append((length, pf, 0.0, mean, stderr))
            job += 1
    return SweepResult(
        name="rotation-vs-length",
        columns=[
            ("length", "m"),
            ("placement_fraction", "-"),
            ("ideal", "-"),
            ("mean_toggled_azimuth", "rad"),
            ("azimuth_stderr", "rad"),
        ],
        rows=rows,
        metadata=_core_metadata("rotation-vs-length", base, base.realizations),
    )


def sweep_heatmap(base: ExperimentBase, placement_fractions, detuning_fractions) -> SweepResult:
    """Mean toggled rotation over a (placement, detuning) grid, normalized to
    the perfectly placed on-resonance cell."""
    pfs = [float(p) for p in placement_fractions]
    deltas = [float(d) for d in detuning_fractions]
    if not pfs or not deltas:
        raise InvalidArgumentError("sweep grids must be non-empty")
    backend = core.active_backend()
    means: Dict[tuple, float] = {}
    job = 0
    for pf in pfs:
        fib = _fiber_for_point(base.fiber, placement=pf, dd_enabled=True)
        for d in deltas:
            fld = dataclasses.replace(base.field, detuning_fraction=d)
            mean, _ = _toggled_stats(
                fib, fld, derive_seed(base.master_seed, _TAG_HEATMAP, job),
                base.realizations, backend,
            )
            means[(pf, d)] = mean
            job += 1
    if (0.0, 0.0) in means:
        reference = means[(0.0, 0.0)]
    else:
        fib0 = _fiber_for_point(base.fiber, placement=0.0, dd_enabled=True)
        fld0 = dataclasses.replace(base.field, detuning_fraction=0.0)
        reference = propagate(
            fib0, fld0, _uniform_zero_profile(fib0.length),
            build_lattice(fib0, 0), False, backend=backend,
        ).toggled_azimuth
    if reference == 0.0:
        raise DegenerateRatioError("reference rotation is zero; nothing to normalize by")
    rows = [(pf, d, float(means[(pf, d)] / reference)) for pf in pfs for d in deltas]
    return SweepResult(
        name="heatmap",
        columns=[
            ("placement_fraction", "-"),
            ("detuning_fraction", "-"),
            ("normalized_rotation", "-"),
        ],
        rows=rows,
        metadata=_core_metadata("heatmap", base, base.realizations),
    )


def single_run(base: ExperimentBase) -> SweepResult:
    """One disorder realization with the toggled signal sampled along the fiber.

    Trajectory recording runs on the pure-python walk, so the backend metadata
    reports "python" regardless of the environment selection.
    """
    point_seed = derive_seed(base.master_seed, _TAG_SINGLE, 0)
    spec = dataclasses.replace(base.noise, seed=derive_seed(point_seed, 0, 0))
    profile = sample_profile(spec, base.fiber.length)
    lattice = build_lattice(base.fiber, derive_seed(point_seed, 0, 1))
    res = propagate(base.fiber, base.field, profile, lattice, True,
                    backend="python")
    rows = [(float(p), float(t)) for p, t in res.trajectory]
    metadata = _core_metadata("single-run", base, 1)
    metadata["backend"] = "python"
    return SweepResult(
        name="single-run",
        columns=[("position", "m"), ("toggled_azimuth", "rad")],
        rows=rows,
        metadata=metadata,
    )
