"""Exception hierarchy for photinus.

Errors fall in two families. Input problems (``ConfigurationError``,
``UnsupportedInputError``) map to CLI exit code 2; numerical failures
(``NumericalError`` and subclasses) map to exit code 3.
"""


class PhotinusError(Exception):
    """Base class for all photinus errors."""


class ConfigurationError(PhotinusError):
    """Invalid user input that passed type validation."""


class UnsupportedInputError(PhotinusError):
    """Input of a kind the requested operation does not accept."""


class NumericalError(PhotinusError):
    """A numerical procedure failed or produced an inconsistent result."""


class ConvergenceError(NumericalError):
    """An iterative method did not converge."""


class UnsupportedSpectrumError(NumericalError):
    """Floquet spectrum outside the supported class (real, positive, simple)."""


class UnsupportedOrderError(NumericalError):
    """Derivative or expansion order beyond what is implemented."""


class DependencyError(NumericalError):
    """A lower-order quantity needed by an assembly step is missing."""


class DimensionMismatchError(NumericalError):
    """Objects defined on different state dimensions were combined."""


class ResonanceError(NumericalError):
    """A periodic solve is singular beyond tolerance."""

    def __init__(self, message: str, order: str):
        """Record the order of the hierarchy that failed."""
        super().__init__(message)
        self.order = order


class ResolutionError(NumericalError):
    """A Fourier representation does not resolve its function."""


class AsymptoteError(NumericalError):
    """An isostable value diverges (limit point of a locked branch)."""

    def __init__(self, message: str, parameter: float | None = None):
        """Record the parameter value at which the divergence was detected."""
        super().__init__(message)
        self.parameter = parameter


class NonExistenceError(NumericalError):
    """The locking consistency equations admit no common frequency."""

    def __init__(self, message: str, spread: float):
        """Record the spread of the candidate frequencies."""
        super().__init__(message)
        self.spread = spread


class InconsistencyError(NumericalError):
    """A stability computation violated a structural identity."""


class InvalidFilterError(NumericalError):
    """The exponential filter of the higher-order kernels is not contracting."""


class DivergenceError(NumericalError):
    """A simulation left the admissible region."""

    def __init__(self, message: str, time: float):
        """Record the blow-up time."""
        super().__init__(message)
        self.time = time


class DomainError(NumericalError):
    """A closed-form evaluation was requested outside its domain of validity."""
