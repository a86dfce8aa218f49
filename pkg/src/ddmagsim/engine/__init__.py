"""Propagation engine: lattice construction, single passes, and ensembles."""

from . import core
from .core import (
    EnsembleResult,
    FiberSpec,
    RealizationResult,
    WaveplateLattice,
    active_backend,
    build_lattice,
    derive_seed,
    kernel_available,
    propagate,
    run_ensemble,
)

__all__ = [
    "EnsembleResult",
    "FiberSpec",
    "RealizationResult",
    "WaveplateLattice",
    "active_backend",
    "build_lattice",
    "core",
    "derive_seed",
    "kernel_available",
    "propagate",
    "run_ensemble",
]
