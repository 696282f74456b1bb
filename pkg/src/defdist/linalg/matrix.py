import numpy as np
from numpy.typing import ArrayLike

from defdist.exceptions import DimensionMismatch, NonFinite

# Dense complex128 arrays in numpy's default C (row-major) layout.
ComplexMatrix = np.ndarray
ComplexVector = np.ndarray


def as_complex_matrix(data: ArrayLike, square: bool = True) -> ComplexMatrix:
    """
    Validate and convert input to a dense row-major complex matrix.

    Args:
        data: Anything numpy can turn into a 2D array.
        square: Require rows == cols.

    Returns:
        A C-contiguous complex128 copy of the input.

    Raises:
        DimensionMismatch: If the input is not 2D (or not square when required)
        NonFinite: If any entry is NaN or Inf
    """
    matrix = np.array(data, dtype=np.complex128, order="C", copy=True)

    if matrix.ndim != 2:
        raise DimensionMismatch(
            f"Expected a 2D matrix, got {matrix.ndim}D array with shape {matrix.shape}"
        )
    if square and matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {matrix.shape}")
    if matrix.size == 0:
        raise DimensionMismatch("Matrix has no entries")
    if not np.isfinite(matrix).all():
        raise NonFinite("Matrix contains NaN or Inf entries")

    return matrix


def as_complex_vector(data: ArrayLike) -> ComplexVector:
    """Validate and convert input to a non-empty complex128 vector."""
    vector = np.array(data, dtype=np.complex128, copy=True).reshape(-1)

    if vector.size == 0:
        raise DimensionMismatch("Vector has no entries")
    if not np.isfinite(vector).all():
        raise NonFinite("Vector contains NaN or Inf entries")

    return vector


def frobenius_norm(matrix: ComplexMatrix) -> float:
    return float(np.linalg.norm(matrix, "fro"))


def shifted(matrix: ComplexMatrix, z: complex) -> ComplexMatrix:
    """Return matrix - z*I as a new array."""
    result = np.array(matrix, dtype=np.complex128, copy=True)
    result[np.diag_indices_from(result)] -= z
    return result
