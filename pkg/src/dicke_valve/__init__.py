"""Steady-state heat currents of N qubits collectively coupled to thermal baths."""

__version__ = "0.1.0"

from .estimator import HeatValveModel, solve_point  # noqa: E402
from .exceptions import (ConfigError, DickeValveError, DomainError, LimitingCaseWarning,  # noqa: E402
                         NumericalDegeneracyError, SizeError, SolverError, UsageError, ValidityError,
                         ValidityWarning)
from .units import convert_units  # noqa: E402

__all__ = ["ConfigError", "DickeValveError", "DomainError", "HeatValveModel", "LimitingCaseWarning",
           "NumericalDegeneracyError", "SizeError", "SolverError", "UsageError", "ValidityError",
           "ValidityWarning", "__version__", "convert_units", "solve_point"]
