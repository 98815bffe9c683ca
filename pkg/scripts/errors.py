"""
Error types shared by every lab package.

Value-type validation raises the ValueError-flavoured classes so callers that
only know about ValueError keep working; the CLI maps the classes to exit codes.
"""

from typing import Optional


class LabError(Exception):
    """Base class for all lab errors"""


class DomainError(LabError, ValueError):
    """Argument outside the mathematical domain (x < 0, ν < 0, ...)"""


class InvalidParameterError(LabError, ValueError):
    """Parameter violates a precondition (n < 8, r > 1, β = 0, ...)"""


class GridMismatchError(LabError, ValueError):
    """Two sampled objects live on different grids"""


class HorizonMissingError(LabError, ValueError):
    """An aperiodic set needs an explicit scan horizon"""


class WitnessMissingError(LabError, ValueError):
    """A thickness witness (r, L) is required but absent"""


class EmptyBandError(LabError, ValueError):
    """Band window does not meet the frequency grid"""


class ZeroInitialDatumError(LabError, ValueError):
    """Observability ratio of the zero function"""


class DomainViolationError(LabError, ValueError):
    """Sampled function is not in the operator's (truncated) form domain"""


class DegenerateSubspaceError(LabError, ValueError):
    """Band subspace has no usable basis vectors"""


class RankDeficiencyError(LabError, ValueError):
    """Adjoint images inside the band are numerically dependent"""

    def __init__(self, message: str, condition_number: float = float("inf")):
        super().__init__(message)
        self.condition_number = condition_number


class ConfigError(LabError, ValueError):
    """Experiment config rejected; pointer is a JSON pointer to the field"""

    def __init__(self, message: str, pointer: Optional[str] = None):
        super().__init__(message)
        self.pointer = pointer or ""


class ResourceCapError(LabError, RuntimeError):
    """Requested dense kernel exceeds the configured entry cap"""
