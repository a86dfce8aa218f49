"""Monte Carlo simulator of photon polarization transport through a
birefringent fiber in an AC magnetic field, with half-waveplate dynamical
decoupling of the dephasing noise."""

from ._version import __version__
from .bloch import (
    Axis,
    AxisRotation,
    PolarizationEnsemble,
    PolarizationState,
    accumulate,
    apply_pi_pulse_x,
    apply_rotation,
    azimuth,
    fidelity,
)
from .engine import (
    EnsembleResult,
    FiberSpec,
    RealizationResult,
    WaveplateLattice,
    build_lattice,
    propagate,
    run_ensemble,
)
from .field import (
    SPEED_OF_LIGHT,
    FieldSpec,
    OpticsSpec,
    characteristic_frequency,
    faraday_rotation_angle,
    field_value,
)
from .metrics import SignalStrength, detuning_envelope, signal_strength
from .noise import NoiseSpec, PhaseProfile, phase_at, sample_profile

__all__ = [
    "Axis",
    "AxisRotation",
    "EnsembleResult",
    "FiberSpec",
    "FieldSpec",
    "NoiseSpec",
    "OpticsSpec",
    "PhaseProfile",
    "PolarizationEnsemble",
    "PolarizationState",
    "RealizationResult",
    "SPEED_OF_LIGHT",
    "SignalStrength",
    "WaveplateLattice",
    "__version__",
    "accumulate",
    "apply_pi_pulse_x",
    "apply_rotation",
    "azimuth",
    "build_lattice",
    "characteristic_frequency",
    "detuning_envelope",
    "faraday_rotation_angle",
    "fidelity",
    "field_value",
    "phase_at",
    "propagate",
    "run_ensemble",
    "sample_profile",
    "signal_strength",
]
