"""Exception and warning types raised by :mod:`dicke_valve`."""


class DickeValveError(Exception):
    """Base class for all package errors."""


class SizeError(DickeValveError, ValueError):
    """Requested problem size is outside the supported range."""


class DomainError(DickeValveError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(DickeValveError, ValueError):
    """A scenario configuration is malformed or inconsistent."""

    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class UsageError(DickeValveError, ValueError):
    """An operation was called in a way its contract does not allow."""


class ValidityError(DickeValveError, ValueError):
    """Inputs fall outside the regime where a model formula applies."""


class SolverError(DickeValveError, RuntimeError):
    """A steady-state solve failed or produced an unacceptable residual."""


class NumericalDegeneracyError(SolverError):
    """The stationary state is not unique when it was required to be."""


class LimitingCaseWarning(UserWarning):
    """A result was produced by a limiting branch (e.g. zero temperature)."""


class ValidityWarning(UserWarning):
    """Inputs are close to the edge of a model's validity regime."""
