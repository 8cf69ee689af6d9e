"""Exception hierarchy for entbound"""
from typing import Any, Dict, Optional


class EntboundError(Exception):
    """Base class for every error raised by entbound"""

    exit_code: int = 1


class InvalidInputError(EntboundError):
    """Caller supplied arguments outside the supported domain"""

    exit_code = 2


class DomainError(InvalidInputError):
    """Argument outside the mathematical domain of a function"""


class SpecValidationError(InvalidInputError):
    """A system specification violates one of its invariants"""


class UnsupportedStatisticsError(InvalidInputError):
    """Operation defined for one particle statistics only"""


class DimensionMismatchError(InvalidInputError):
    """Vectors, bases or phase sets of incompatible size"""


class ConfigError(InvalidInputError):
    """Experiment configuration is unusable"""


class OptimizationDimensionError(InvalidInputError):
    """Phase space too large for the simplex search"""


class ResultsFormatError(InvalidInputError):
    """A results file is not a sweep CSV this version can read"""


class ComputationError(EntboundError):
    """Numerical routine failed at runtime"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics: Dict[str, Any] = diagnostics or {}

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
        return f"{base} ({details})"


class DiagonalizationError(ComputationError):
    """Eigensolver did not converge or violated its residual contract"""


class ThermalStateError(ComputationError):
    """Boltzmann weights underflowed for every eigenvalue"""


class NegativeEigenvalueError(ComputationError):
    """Reduced density matrix eigenvalue below roundoff tolerance"""
