"""Exception hierarchy. Every package-raised error derives from SimulationError."""


class SimulationError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(SimulationError, ValueError):
    """A value violates a type invariant or operation precondition."""


class AzimuthUndefinedError(SimulationError):
    """Equatorial angle requested for a state at (or too near) a pole."""


class PositionRangeError(SimulationError):
    """Position lookup outside the covered fiber length."""


class ProfileCoverageError(SimulationError):
    """Phase profile does not cover the full fiber length."""


class DegenerateRatioError(SimulationError):
    """Signal ratio requested with a zero reference angle."""


class EnvelopeUndefinedError(SimulationError):
    """Detuning envelope requested at exact resonance."""


class ConfigError(SimulationError):
    """Configuration file or override could not be applied."""
