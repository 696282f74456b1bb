import threading
import warnings
from typing import Optional

import numpy as np
import scipy.linalg
from scipy.linalg import LinAlgWarning
from scipy.linalg.lapack import get_lapack_funcs

from defdist.exceptions import DimensionMismatch, NonFinite, SingularMatrix
from defdist.linalg.matrix import ComplexMatrix, ComplexVector, frobenius_norm

# Pivots below this fraction of ||M||_F count as zero.
PIVOT_THRESHOLD = 1e-14


class Counters:
    """Singleton tally of factorizations and solves, safe to bump from threads."""

    _instance: Optional["Counters"] = None

    def __new__(cls) -> "Counters":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._lock = threading.Lock()
            cls._instance._factorizations = 0
            cls._instance._solves = 0
        return cls._instance

    def add_factorization(self) -> None:
        with self._lock:
            self._factorizations += 1

    def add_solve(self) -> None:
        with self._lock:
            self._solves += 1

    def reset(self) -> None:
        with self._lock:
            self._factorizations = 0
            self._solves = 0

    @property
    def factorizations(self) -> int:
        return self._factorizations

    @property
    def solves(self) -> int:
        return self._solves


class Factorization:
    """
    Row-pivoted LU factors of a complex square matrix, P M = L U.

    The factors are never modified after construction, so one instance may
    serve solves from several threads; only the solve counter changes.
    """

    def __init__(
        self,
        lu: np.ndarray,
        piv: np.ndarray,
        norm_fro: float,
        norm_one: float,
        condition: float,
    ) -> None:
        self._lu = lu
        self._piv = piv
        self._norm_fro = norm_fro
        self._norm_one = norm_one
        self._condition = condition

        self._lock = threading.Lock()
        self._solve_count = 0

    @property
    def dim(self) -> int:
        return self._lu.shape[0]

    @property
    def condition(self) -> float:
        """1-norm condition estimate of the factored matrix."""
        return self._condition

    @property
    def norm_fro(self) -> float:
        return self._norm_fro

    @property
    def solve_count(self) -> int:
        return self._solve_count

    @property
    def lower(self) -> np.ndarray:
        lower = np.tril(self._lu, k=-1)
        lower[np.diag_indices_from(lower)] = 1.0
        return lower

    @property
    def upper(self) -> np.ndarray:
        return np.triu(self._lu)

    @property
    def permutation(self) -> np.ndarray:
        """Row order: M[permutation] == L @ U."""
        perm = np.arange(self.dim)
        for i, p in enumerate(self._piv):
            perm[i], perm[p] = perm[p], perm[i]
        return perm

    def reconstruct(self) -> ComplexMatrix:
        """Rebuild M from its factors."""
        rebuilt = np.empty_like(self._lu)
        rebuilt[self.permutation] = self.lower @ self.upper
        return rebuilt

    def _solve(self, rhs: ComplexVector) -> ComplexVector:
        y = scipy.linalg.lu_solve((self._lu, self._piv), rhs, check_finite=False)
        with self._lock:
            self._solve_count += 1
        Counters().add_solve()
        return y


def factorize(M: ComplexMatrix) -> Factorization:
    """
    Factorize a complex square matrix once for any number of later solves.

    Partial (row) pivoting is used on the full matrix; any Hermitian structure
    is ignored. The condition estimate comes from LAPACK ``gecon``, the Hager
    and Higham 1-norm estimator (at most five matrix-vector sweeps).

    Args:
        M: Square complex matrix with finite entries.

    Returns:
        Factorization holding the factors, pivots and condition estimate.

    Raises:
        DimensionMismatch: If M is not square
        NonFinite: If M holds NaN/Inf
        SingularMatrix: If a pivot modulus falls below 1e-14 * ||M||_F
    """
    M = np.asarray(M, dtype=np.complex128)

    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DimensionMismatch(f"Expected a non-empty square matrix, got shape {M.shape}")
    if not np.isfinite(M).all():
        raise NonFinite("Matrix to factorize contains NaN or Inf entries")

    norm_fro = frobenius_norm(M)
    norm_one = float(np.linalg.norm(M, 1))

    with warnings.catch_warnings():
        # Exact zero pivots are reported below with our own threshold
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    Counters().add_factorization()

    if not np.isfinite(lu).all():
        raise NonFinite("Factorization produced NaN or Inf entries")

    pivots = np.abs(np.diag(lu))
    smallest = float(pivots.min())
    threshold = PIVOT_THRESHOLD * norm_fro
    if smallest < threshold or norm_fro == 0.0:
        raise SingularMatrix(
            f"Pivot modulus {smallest:.3e} below threshold {threshold:.3e}",
            pivot=smallest,
            threshold=threshold,
        )

    gecon, = get_lapack_funcs(("gecon",), (lu,))
    rcond, info = gecon(lu, norm_one, norm="1")
    condition = float(np.inf) if info != 0 or rcond == 0.0 else float(1.0 / rcond)

    return Factorization(lu, piv, norm_fro, norm_one, condition)


def solve(F: Factorization, rhs: ComplexVector) -> ComplexVector:
    """
    Solve M y = rhs with a stored factorization of M.

    Raises:
        DimensionMismatch: If rhs length differs from the dimension of M
    """
    rhs = np.asarray(rhs, dtype=np.complex128)

    if rhs.ndim != 1 or rhs.shape[0] != F.dim:
        raise DimensionMismatch(
            f"Right-hand side of shape {rhs.shape} does not match dimension {F.dim}"
        )

    return F._solve(rhs)
