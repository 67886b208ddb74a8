"""
Domain errors raised by the cone services and the file loaders
"""
from typing import Optional


class ConeCertError(Exception):
    """Base class for every error the toolkit raises on purpose"""


class DimensionError(ConeCertError, ValueError):
    """Shapes disagree, a matrix is not square, or an input is empty"""


class ZeroVectorError(ConeCertError, ValueError):
    """A projective operation received the zero vector"""


class NotInConeError(ConeCertError, ValueError):
    """A point violates the membership or interior requirement of an operation"""


class GeometryError(ConeCertError, ValueError):
    """Degenerate Möbius map, disk touching 0 or the imaginary axis, bad parameters"""


class ConditionFailedError(ConeCertError):
    """The matrix does not map the cone ℂ₊ⁿ into its interior"""

    def __init__(self, message: str, violation: Optional[tuple] = None):
        super().__init__(message)
        self.violation = violation


class ConvergenceError(ConeCertError, ArithmeticError):
    """An iterative method ran out of iterations"""


class InputFileError(ConeCertError):
    """A matrix, vector or cone file could not be parsed"""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[int] = None):
        self.row = row
        self.column = column
        if row is not None and column is not None:
            message = f"row {row}, column {column}: {message}"
        elif row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
