from typing import List, TypedDict

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from defdist.exceptions import DimensionMismatch, NoConvergence
from defdist.linalg.matrix import (
    ComplexMatrix,
    ComplexVector,
    as_complex_matrix,
    frobenius_norm,
)

# The eigenvalue routine is for reporting only; larger inputs are refused.
EIGEN_DIAGNOSTIC_MAX_DIM = 2000
EIGEN_BACKWARD_TOL = 1e-8


class SingularTriplet(TypedDict):
    """Smallest singular value of B with unit vectors, B v = sigma u."""
    sigma: float
    u: ComplexVector
    v: ComplexVector


def fix_phase(u: ComplexVector, v: ComplexVector) -> tuple[ComplexVector, ComplexVector]:
    """
    Rotate (u, v) by a common unit scalar so that the largest-modulus entry of
    v is real and positive. Ties go to the lowest index (np.argmax).
    """
    k = int(np.argmax(np.abs(v)))
    if v[k] == 0:
        return u, v
    phase = np.conj(v[k]) / abs(v[k])
    v = v * phase
    v[k] = abs(v[k])
    return u * phase, v


def smallest_singular_triplet(B: ArrayLike) -> SingularTriplet:
    """
    Compute the smallest singular value of a square matrix with unit left and
    right singular vectors.

    A full SVD (LAPACK ``gesdd`` through scipy) is used; the returned vectors
    satisfy B v = sigma u and B^H u = sigma v with the phase convention of
    :func:`fix_phase`, so repeated calls are bitwise identical.

    Raises:
        DimensionMismatch: If B is not square
        NoConvergence: If the SVD fails; the gap between the two smallest
            singular values (when it could be estimated) is attached.
    """
    B = as_complex_matrix(B)

    try:
        U, s, Vh = scipy.linalg.svd(B, check_finite=False)
    except np.linalg.LinAlgError as exc:
        try:
            svals = np.sort(scipy.linalg.svdvals(B, check_finite=False))
            gap = float(svals[1] - svals[0]) if svals.size > 1 else None
        except np.linalg.LinAlgError:
            gap = None
        raise NoConvergence(
            f"SVD did not converge ({exc}); smallest singular value may be multiple",
            cluster_gap=gap,
        ) from exc

    u = np.ascontiguousarray(U[:, -1])
    v = np.ascontiguousarray(Vh[-1].conj())
    u, v = fix_phase(u, v)

    return {"sigma": float(s[-1]), "u": u, "v": v}


def smallest_singular_value(B: ArrayLike) -> float:
    """sigma_min(B) without vectors."""
    B = np.asarray(B, dtype=np.complex128)
    try:
        return float(scipy.linalg.svdvals(B, check_finite=False)[-1])
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"Singular value computation did not converge ({exc})") from exc


def eigenvalues_diagnostic(B: ArrayLike) -> List[complex]:
    """
    All eigenvalues of a square matrix, for reporting and certification only.

    LAPACK ``geev`` (Hessenberg reduction followed by shifted QR) is used. Each
    eigenvalue is accepted only if its unit eigenvector gives a backward error
    ||B w - lambda w|| <= 1e-8 ||B||_F.

    Raises:
        DimensionMismatch: If B is not square or larger than the diagnostic cap
        NoConvergence: If QR fails or a backward error check does not pass
    """
    B = as_complex_matrix(B)
    n = B.shape[0]

    if n > EIGEN_DIAGNOSTIC_MAX_DIM:
        raise DimensionMismatch(
            f"eigenvalues_diagnostic is limited to n <= {EIGEN_DIAGNOSTIC_MAX_DIM}, got {n}"
        )

    try:
        values, vectors = scipy.linalg.eig(B, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"Eigenvalue iteration did not converge ({exc})") from exc

    bound = EIGEN_BACKWARD_TOL * max(frobenius_norm(B), np.finfo(float).tiny)
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    residuals = np.linalg.norm(B @ vectors - vectors * values, axis=0)

    worst = int(np.argmax(residuals))
    if residuals[worst] > bound:
        raise NoConvergence(
            f"Eigenvalue {values[worst]:.6e} has backward error {residuals[worst]:.3e} > {bound:.3e}"
        )

    return [complex(v) for v in values]


def nearest_eigenvalues(B: ArrayLike, z: complex, count: int = 2) -> List[complex]:
    """The `count` eigenvalues of B closest to z, nearest first."""
    values = eigenvalues_diagnostic(B)
    return sorted(values, key=lambda lam: abs(lam - z))[:count]
