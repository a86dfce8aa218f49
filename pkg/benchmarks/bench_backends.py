"""Compare the compiled event-walk kernel against the pure-Python fallback.

Runs the same ensemble workload through both backends and reports wall time
and throughput.  The two implementations must produce identical physics (the
test suite asserts agreement to 1e-9); this script only measures speed.

Usage:
    python3 benchmarks/bench_backends.py [--realizations N] [--length M]
"""

from __future__ import annotations

import argparse
import os
import time
from dataclasses import replace

import numpy as np

from ddmagsim.engine import (
    FiberSpec,
    build_lattice,
    kernel_available,
    propagate,
    run_ensemble,
)
from ddmagsim.engine.core import derive_seed
from ddmagsim.field import FieldSpec, OpticsSpec
from ddmagsim.noise import NoiseSpec, sample_profile


def build_workload(length: float) -> tuple[FiberSpec, FieldSpec, NoiseSpec]:
    optics = OpticsSpec(verdet=-32.0, refractive_index=1.45, waveplate_separation=0.1)
    fiber = FiberSpec(
        length=length,
        optics=optics,
        placement_error_fraction=0.08,
        dd_enabled=True,
    )
    field = FieldSpec(amplitude=1e-5)
    noise = NoiseSpec(
        coherence_length=3.0,
        total_phase_std=100.0,
        wavelength=1.064e-6,
        seed=0,
        layout="renewal",
        normalization="coherent",
    )
    return fiber, field, noise


def bench_ensemble(backend: str, realizations: int, length: float) -> float:
    fiber, field, noise = build_workload(length)
    os.environ["DDMAGSIM_BACKEND"] = backend
    try:
        t0 = time.perf_counter()
        run_ensemble(fiber, field, noise, realizations, 20260816)
        return time.perf_counter() - t0
    finally:
        os.environ.pop("DDMAGSIM_BACKEND", None)


def bench_single(backend: str, repeats: int, length: float) -> float:
    """Single-realization latency, bypassing the thread pool."""
    fiber, field, noise = build_workload(length)
    t_total = 0.0
    for i in range(repeats):
        spec = replace(noise, seed=derive_seed(20260816, i, 0))
        profile = sample_profile(spec, fiber.length)
        lattice = build_lattice(fiber, derive_seed(20260816, i, 1))
        t0 = time.perf_counter()
        propagate(fiber, field, profile, lattice, backend=backend)
        t_total += time.perf_counter() - t0
    return t_total


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--realizations", type=int, default=2000)
    parser.add_argument("--length", type=float, default=500.0)
    args = parser.parse_args()

    if not kernel_available():
        raise SystemExit("compiled kernel not built; nothing to compare")

    n_events = int(args.length / 0.1) + int(np.ceil(args.length / 3.0))
    print(f"workload: L={args.length} m, ~{n_events} events/realization")
    print()

    print(f"{'case':<34}{'kernel':>10}{'python':>10}{'speedup':>9}")
    for label, fn, arg in [
        ("single realization (x200, no pool)", bench_single, 200),
        (f"ensemble ({args.realizations} realizations)", bench_ensemble, args.realizations),
    ]:
        tk = fn("kernel", arg, args.length)
        tp = fn("python", arg, args.length)
        print(f"{label:<34}{tk:>9.3f}s{tp:>9.3f}s{tp / tk:>8.1f}x")


if __name__ == "__main__":
    main()
