from typing import Optional, Tuple, TypedDict

import numpy as np
from numpy.typing import ArrayLike

from defdist.exceptions import CertificationFailed
from defdist.implicit.evaluate import F_alphabeta, IterateState
from defdist.implicit.newton import ProblemInstance
from defdist.linalg.matrix import ComplexMatrix, ComplexVector, frobenius_norm, shifted
from defdist.linalg.spectral import smallest_singular_value


class CertifyTolerances(TypedDict, total=False):
    residual_tol: float  # relative to ||A||_F
    orthogonality_tol: float
    norm_balance_tol: float  # relative gap between ||u|| and ||v||


DEFAULT_TOLERANCES: CertifyTolerances = {
    "residual_tol": 1e-10,
    "orthogonality_tol": 1e-10,
    "norm_balance_tol": 1e-8,
}


class DefectiveCertificate(TypedDict):
    """
    Evidence that z_star is a nonderogatory defective eigenvalue of
    B = A - epsilon_star u_star v_star^H, at distance epsilon_star from A.
    """
    z_star: complex
    epsilon_star: float
    u_star: ComplexVector
    v_star: ComplexVector
    B: ComplexMatrix
    residual_right: float  # ||B v - z v||
    residual_left: float  # ||u^H B - z u^H||
    orthogonality: float  # |u^H v|
    sigma_min_shifted: float  # sigma_min(B - z I)
    F_alphabeta: float
    coalescing_pair: Tuple[complex, complex]
    mirror_point: Optional[complex]  # conj(z_star) for real A with complex z_star


def certify(
    A: ArrayLike,
    final: IterateState,
    tolerances: Optional[CertifyTolerances] = None,
) -> DefectiveCertificate:
    """
    Build and verify the defective matrix from a converged Newton state.

    u and v are the halves of the bordered-system solution x, each scaled to
    unit 2-norm. Every residual is recomputed from A, never taken from the
    Newton iteration. A negative epsilon is folded into the sign of u, which
    leaves B unchanged.

    Raises:
        CertificationFailed: Naming the first quantity out of tolerance
    """
    tol: CertifyTolerances = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})

    problem = ProblemInstance(A)
    A = problem.A
    n = problem.n
    norm_A = frobenius_norm(A)

    x = np.asarray(final["x"], dtype=np.complex128)
    u, v = x[:n].copy(), x[n:].copy()
    z = complex(final["alpha"], final["beta"])
    epsilon = float(final["epsilon"])

    if epsilon < 0:
        epsilon, u = -epsilon, -u

    norm_u = float(np.linalg.norm(u))
    norm_v = float(np.linalg.norm(v))
    if norm_u == 0.0 or norm_v == 0.0:
        raise CertificationFailed("singular_vector_norm", min(norm_u, norm_v), 0.0)

    # ||u|| = ||v|| follows from the singular vector equations when epsilon > 0
    if epsilon > 0:
        balance = abs(norm_u - norm_v) / max(norm_u, norm_v)
        if balance > tol["norm_balance_tol"]:
            raise CertificationFailed("norm_balance", balance, tol["norm_balance_tol"])

    u_star = u / norm_u
    v_star = v / norm_v

    B = A - epsilon * np.outer(u_star, v_star.conj())

    residual_right = float(np.linalg.norm(B @ v_star - z * v_star))
    residual_left = float(np.linalg.norm(u_star.conj() @ B - z * u_star.conj()))
    orthogonality = float(abs(np.vdot(u_star, v_star)))

    residual_bound = tol["residual_tol"] * norm_A
    if residual_right > residual_bound:
        raise CertificationFailed("residual_right", residual_right, residual_bound)
    if residual_left > residual_bound:
        raise CertificationFailed("residual_left", residual_left, residual_bound)
    if orthogonality > tol["orthogonality_tol"]:
        raise CertificationFailed("orthogonality", orthogonality, tol["orthogonality_tol"])

    if "f_alphaalpha" in final:
        F = float(F_alphabeta(final))
    else:
        F = float("nan")

    mirror = z.conjugate() if problem.is_real and z.imag != 0 else None

    return {
        "z_star": z,
        "epsilon_star": epsilon,
        "u_star": u_star,
        "v_star": v_star,
        "B": B,
        "residual_right": residual_right,
        "residual_left": residual_left,
        "orthogonality": orthogonality,
        "sigma_min_shifted": smallest_singular_value(shifted(B, z)),
        "F_alphabeta": F,
        "coalescing_pair": problem.coalescing_eigenvalues(z),
        "mirror_point": mirror,
    }
