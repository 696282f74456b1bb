from typing import Any, List, Optional


class DefDistError(Exception):
    """Base class for every error raised by defdist."""
    pass


class DimensionMismatch(DefDistError, ValueError):
    """Raised when matrix or vector shapes do not fit together."""
    pass


class NonFinite(DefDistError, ValueError):
    """Raised when a matrix or vector holds NaN or Inf entries."""
    pass


class BadParameter(DefDistError, ValueError):
    """Raised when a generator or run parameter is out of its range."""
    pass


class SingularMatrix(DefDistError):
    """Raised when a pivot falls below the singularity threshold."""

    def __init__(self, message: str, pivot: float = 0.0, threshold: float = 0.0) -> None:
        super().__init__(message)
        self.pivot = pivot
        self.threshold = threshold


class SingularBorderedMatrix(SingularMatrix):
    """Raised when the bordered matrix M(alpha, beta, epsilon) is singular.

    The usual cure is a new border vector c with c^H x != 0.
    """

    advice = "choose a new border vector c (for example the current x normalised)"


class NoConvergence(DefDistError):
    """Raised when an iterative linear algebra routine gives up."""

    def __init__(self, message: str, cluster_gap: Optional[float] = None) -> None:
        super().__init__(message)
        self.cluster_gap = cluster_gap


class ImaginaryLeak(DefDistError):
    """Raised when a value of the real function f carries a large imaginary part."""

    def __init__(self, name: str, value: complex, bound: float) -> None:
        super().__init__(
            f"{name} has imaginary part {value.imag:.3e} above bound {bound:.3e}"
        )
        self.name = name
        self.value = value
        self.bound = bound


class MaxIterationsExceeded(DefDistError):
    """Raised when Newton's method runs out of iterations."""

    def __init__(self, message: str, records: List[Any]) -> None:
        super().__init__(message)
        self.records = records


class SingularJacobian(DefDistError):
    """Raised when the 3x3 Newton Jacobian is numerically singular."""

    def __init__(self, message: str, det: float, F_alphabeta: float,
                 records: Optional[List[Any]] = None) -> None:
        super().__init__(message)
        self.det = det
        self.F_alphabeta = F_alphabeta
        self.records = records or []


class CertificationFailed(DefDistError):
    """Raised when a computed defective matrix fails verification."""

    def __init__(self, quantity: str, value: float, bound: float) -> None:
        super().__init__(
            f"certification failed: {quantity} = {value:.4e} exceeds {bound:.4e}"
        )
        self.quantity = quantity
        self.value = value
        self.bound = bound


class ParseError(DefDistError, ValueError):
    """Raised for malformed Matrix Market input."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnsupportedFormat(DefDistError, ValueError):
    """Raised for Matrix Market qualifiers that are not handled."""
    pass


class IllConditionedBorder(UserWarning):
    """Warns that the bordered matrix has a large condition estimate."""
    pass
