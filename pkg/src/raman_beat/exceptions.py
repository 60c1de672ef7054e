class RamanBeatError(Exception):
    """Base exception for the Raman beat simulation library."""


class ConfigurationError(RamanBeatError):
    """
    Raised when environment settings are invalid or missing.

    Provides actionable error messages to help users fix configuration issues.
    """


class ValidationError(RamanBeatError):
    """Raised when a scenario or numeric input fails validation."""


class DomainError(RamanBeatError):
    """Raised when an argument lies outside its physical or numerical domain."""


class WindowingError(RamanBeatError):
    """Raised when a field has not decayed at the edges of its time grid."""


class SingularityError(RamanBeatError):
    """Raised when a probe frequency hits a one-photon resonance of the level table."""


class DegenerateStateError(RamanBeatError):
    """Raised when the adiabatic mixing angle is undefined."""


class StiffnessError(RamanBeatError):
    """Raised when the density-matrix integrator cannot make progress."""


class CoverageError(RamanBeatError):
    """Raised when a time remap reaches outside the sampled input span."""


class AlignmentError(RamanBeatError):
    """Raised when a frequency grid is not commensurate with the modulation frequency."""


class GridResolutionError(RamanBeatError):
    """Raised when the time grid cannot resolve the fastest optical oscillation."""


class StepSizeError(RamanBeatError):
    """Raised when the z step violates the propagation stability guard."""


class CombOverflowError(RamanBeatError):
    """Raised when generated sidebands reach the edge of the sideband comb."""


class EmptyFieldError(RamanBeatError):
    """Raised when pulse metrics are requested for an all-zero field."""
