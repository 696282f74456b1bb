import numpy as np
from numpy.typing import ArrayLike

from defdist.exceptions import DimensionMismatch
from defdist.linalg.matrix import ComplexMatrix, ComplexVector


def build_K(A: ArrayLike, alpha: float, beta: float, epsilon: float) -> ComplexMatrix:
    """
    Hermitian 2n x 2n matrix

        K = [[-eps I,        A - zI],
             [(A - zI)^H,   -eps I ]],   z = alpha + i beta.

    The lower-left block is written as the conjugate transpose of the
    upper-right one, so K == K^H holds bitwise. Its eigenvalues are
    -eps +/- sigma_i(A - zI).
    """
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {A.shape}")

    n = A.shape[0]
    z = complex(alpha, beta)

    S = A.copy()
    S[np.diag_indices(n)] -= z

    K = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    K[np.diag_indices(2 * n)] = -float(epsilon)
    K[:n, n:] = S
    K[n:, :n] = S.conj().T

    return K


def build_M(K: ComplexMatrix, c: ComplexVector) -> ComplexMatrix:
    """
    Bordered (2n+1) x (2n+1) Hermitian matrix [[K, c], [c^H, 0]].

    Raises:
        DimensionMismatch: If K is not square or c has the wrong length
    """
    K = np.asarray(K, dtype=np.complex128)
    c = np.asarray(c, dtype=np.complex128).reshape(-1)

    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise DimensionMismatch(f"Expected a square K, got shape {K.shape}")

    m = K.shape[0]
    if c.shape[0] != m:
        raise DimensionMismatch(f"Border vector has length {c.shape[0]}, expected {m}")

    M = np.zeros((m + 1, m + 1), dtype=np.complex128)
    M[:m, :m] = K
    M[:m, m] = c
    M[m, :m] = c.conj()

    return M
