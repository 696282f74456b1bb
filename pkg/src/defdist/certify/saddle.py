from typing import Dict, TypedDict

import numpy as np
from numpy.typing import ArrayLike

from defdist.exceptions import BadParameter
from defdist.linalg.matrix import as_complex_matrix, frobenius_norm, shifted
from defdist.linalg.spectral import smallest_singular_value

COMPASS = {
    "E": 1.0 + 0.0j,
    "NE": (1.0 + 1.0j) / np.sqrt(2.0),
    "N": 1.0j,
    "NW": (-1.0 + 1.0j) / np.sqrt(2.0),
    "W": -1.0 + 0.0j,
    "SW": (-1.0 - 1.0j) / np.sqrt(2.0),
    "S": -1.0j,
    "SE": (1.0 - 1.0j) / np.sqrt(2.0),
}
LINES = (("E", "W"), ("N", "S"), ("NE", "SW"), ("NW", "SE"))


class SaddleReport(TypedDict):
    z_star: complex
    epsilon_star: float
    step: float
    center: float  # sigma_min(A - z* I)
    neighbors: Dict[str, float]
    boundary: bool  # epsilon* = 0, the point is an eigenvalue of A
    saddle: bool
    circle_min: float
    circle_min_deviation: float  # |circle_min - epsilon*|
    second_order: bool
    hessian: np.ndarray
    hessian_det: float


def _sigma(A: np.ndarray, z: complex) -> float:
    return smallest_singular_value(shifted(A, z))


def sigma_min_hessian(A: ArrayLike, z: complex, step: float) -> np.ndarray:
    """
    Central second differences of eps(alpha, beta) = sigma_min(A - (alpha + i beta) I).

    Returns:
        2x2 real matrix [[eps_aa, eps_ab], [eps_ab, eps_bb]].
    """
    if not step > 0:
        raise BadParameter(f"step must be positive, got {step}")

    A = as_complex_matrix(A)
    h = float(step)
    z = complex(z)

    center = _sigma(A, z)
    e_aa = (_sigma(A, z + h) - 2.0 * center + _sigma(A, z - h)) / h**2
    e_bb = (_sigma(A, z + 1j * h) - 2.0 * center + _sigma(A, z - 1j * h)) / h**2
    e_ab = (
        _sigma(A, z + h + 1j * h)
        - _sigma(A, z + h - 1j * h)
        - _sigma(A, z - h + 1j * h)
        + _sigma(A, z - h - 1j * h)
    ) / (4.0 * h**2)

    return np.array([[e_aa, e_ab], [e_ab, e_bb]])


def saddle_check(A: ArrayLike, z_star: complex, epsilon_star: float, step: float) -> SaddleReport:
    """
    Sample sigma_min(A - zI) at z* and at its 8 compass neighbours at distance step.

    A saddle shows up as one line through z* along which z* is a strict
    minimum and another along which it is a strict maximum. The minimum
    over the circle should differ from |epsilon*| by O(step^2). When
    epsilon* is zero z* is an eigenvalue of A and the report flags the
    boundary case instead. Nothing is raised on a failed check.
    """
    if not step > 0:
        raise BadParameter(f"step must be positive, got {step}")

    A = as_complex_matrix(A)
    z_star = complex(z_star)
    epsilon_star = abs(float(epsilon_star))

    center = _sigma(A, z_star)
    neighbors = {name: _sigma(A, z_star + step * d) for name, d in COMPASS.items()}

    floor = 64.0 * np.finfo(float).eps * frobenius_norm(A)
    boundary = epsilon_star <= floor or center <= floor

    rises = any(neighbors[a] > center and neighbors[b] > center for a, b in LINES)
    falls = any(neighbors[a] < center and neighbors[b] < center for a, b in LINES)

    hessian = sigma_min_hessian(A, z_star, step)
    circle_min = min(neighbors.values())
    deviation = abs(circle_min - epsilon_star)
    curvature = float(np.linalg.norm(hessian, 2))

    return {
        "z_star": z_star,
        "epsilon_star": epsilon_star,
        "step": float(step),
        "center": center,
        "neighbors": neighbors,
        "boundary": bool(boundary),
        "saddle": bool(rises and falls and not boundary),
        "circle_min": circle_min,
        "circle_min_deviation": deviation,
        "second_order": bool(deviation <= max(curvature, 1.0) * step**2 + floor),
        "hessian": hessian,
        "hessian_det": float(np.linalg.det(hessian)),
    }
