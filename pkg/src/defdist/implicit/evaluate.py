from typing import TypedDict

import numpy as np
from numpy.typing import ArrayLike

from defdist.exceptions import DimensionMismatch, ImaginaryLeak, SingularBorderedMatrix, SingularMatrix
from defdist.implicit.bordered import build_K, build_M
from defdist.linalg.factorization import Factorization, factorize, solve
from defdist.linalg.matrix import ComplexVector

DEFAULT_IMAG_TOL = 1e-10


class IterateState(TypedDict, total=False):
    """
    Values of f(alpha, beta, epsilon) = det K / det M and its derivatives at one
    point, with the solutions x = [u; v] of the bordered systems.

    evaluate_f_and_gradient fills the point, x, f, f_alpha, f_beta, x_alpha
    and x_beta; evaluate_jacobian adds the rest. The factorization of M is
    kept so the second stage can reuse it.
    """
    alpha: float
    beta: float
    epsilon: float
    c: ComplexVector
    x: ComplexVector
    f: float
    f_alpha: float
    f_beta: float
    f_epsilon: float
    f_alphaalpha: float
    f_alphabeta: float
    f_betabeta: float
    f_alphaepsilon: float
    f_betaepsilon: float
    x_alpha: ComplexVector
    x_beta: ComplexVector
    x_epsilon: ComplexVector
    factorization: Factorization
    condition: float


def _real(name: str, value: complex, imag_tol: float) -> float:
    """Drop the imaginary rounding residue of a value that is real in exact arithmetic."""
    bound = imag_tol * (1.0 + abs(value))
    if abs(value.imag) > bound:
        raise ImaginaryLeak(name, complex(value), bound)
    return float(value.real)


def _bordered_rhs(top: ComplexVector, bottom: ComplexVector) -> ComplexVector:
    return np.concatenate([top, bottom, [0.0]])


def evaluate_f_and_gradient(
    A: ArrayLike,
    c: ComplexVector,
    alpha: float,
    beta: float,
    epsilon: float,
    imag_tol: float = DEFAULT_IMAG_TOL,
) -> IterateState:
    """
    Factorize M(alpha, beta, epsilon) once and solve for f, f_alpha, f_beta.

    Right-hand sides: e_last gives [x; f], [v; u; 0] gives [x_alpha; f_alpha]
    and i[v; -u; 0] gives [x_beta; f_beta].

    Raises:
        SingularBorderedMatrix: If M is singular; pick a new border vector
        ImaginaryLeak: If f or a derivative is not real to within imag_tol
    """
    A = np.asarray(A, dtype=np.complex128)
    n = A.shape[0]
    c = np.asarray(c, dtype=np.complex128).reshape(-1)

    if c.shape[0] != 2 * n:
        raise DimensionMismatch(f"Border vector has length {c.shape[0]}, expected {2 * n}")

    M = build_M(build_K(A, alpha, beta, epsilon), c)
    try:
        F = factorize(M)
    except SingularMatrix as exc:
        raise SingularBorderedMatrix(
            f"Bordered matrix is singular at (alpha, beta, epsilon) = "
            f"({alpha:.6e}, {beta:.6e}, {epsilon:.6e}): {exc}; "
            f"{SingularBorderedMatrix.advice}",
            pivot=exc.pivot,
            threshold=exc.threshold,
        ) from exc

    e_last = np.zeros(2 * n + 1, dtype=np.complex128)
    e_last[-1] = 1.0

    y = solve(F, e_last)
    x, f = y[:-1], y[-1]
    u, v = x[:n], x[n:]

    y_alpha = solve(F, _bordered_rhs(v, u))
    y_beta = solve(F, 1j * _bordered_rhs(v, -u))

    return {
        "alpha": float(alpha),
        "beta": float(beta),
        "epsilon": float(epsilon),
        "c": c,
        "x": x,
        "f": _real("f", f, imag_tol),
        "f_alpha": _real("f_alpha", y_alpha[-1], imag_tol),
        "f_beta": _real("f_beta", y_beta[-1], imag_tol),
        "x_alpha": y_alpha[:-1],
        "x_beta": y_beta[:-1],
        "factorization": F,
        "condition": F.condition,
    }


def evaluate_jacobian(
    A: ArrayLike,
    c: ComplexVector,
    state: IterateState,
    imag_tol: float = DEFAULT_IMAG_TOL,
) -> IterateState:
    """
    Add f_epsilon and the five second derivatives to a state from
    evaluate_f_and_gradient, reusing its factorization (six more solves).

    Returns:
        A new state; the input state is left untouched.
    """
    F = state["factorization"]
    x = state["x"]
    n = x.shape[0] // 2

    if np.asarray(A).shape[0] != n or np.asarray(c).reshape(-1).shape[0] != 2 * n:
        raise DimensionMismatch("State does not match A and c")

    u_a, v_a = state["x_alpha"][:n], state["x_alpha"][n:]
    u_b, v_b = state["x_beta"][:n], state["x_beta"][n:]

    y_eps = solve(F, np.concatenate([x, [0.0]]))
    x_eps = y_eps[:-1]
    u_e, v_e = x_eps[:n], x_eps[n:]

    y_aa = solve(F, 2.0 * _bordered_rhs(v_a, u_a))
    y_ab = solve(F, _bordered_rhs(1j * v_a + v_b, -1j * u_a + u_b))
    y_bb = solve(F, 2j * _bordered_rhs(v_b, -u_b))
    y_ae = solve(F, _bordered_rhs(v_e + u_a, u_e + v_a))
    y_be = solve(F, _bordered_rhs(1j * v_e + u_b, -1j * u_e + v_b))

    completed: IterateState = dict(state)
    completed.update({
        "f_epsilon": _real("f_epsilon", y_eps[-1], imag_tol),
        "f_alphaalpha": _real("f_alphaalpha", y_aa[-1], imag_tol),
        "f_alphabeta": _real("f_alphabeta", y_ab[-1], imag_tol),
        "f_betabeta": _real("f_betabeta", y_bb[-1], imag_tol),
        "f_alphaepsilon": _real("f_alphaepsilon", y_ae[-1], imag_tol),
        "f_betaepsilon": _real("f_betaepsilon", y_be[-1], imag_tol),
        "x_epsilon": x_eps,
    })
    return completed


def reflect_epsilon(state: IterateState) -> IterateState:
    """
    Move a completed state at (alpha, beta, epsilon) with border [c_u; c_v] to
    (alpha, beta, -epsilon) with border [c_u; -c_v], without a new factorization.

    With D = diag(I, -I), K(-epsilon) = -D K(epsilon) D, so the reflected
    function is f'(alpha, beta, e) = -f(alpha, beta, -e) and v changes sign.
    g flips sign; g_norm and F_alphabeta are unchanged. The factorization of
    the old M is dropped from the result.
    """
    n = state["x"].shape[0] // 2
    sign = np.concatenate([np.ones(n), -np.ones(n)])

    reflected: IterateState = {
        key: value for key, value in state.items() if key != "factorization"
    }
    reflected["epsilon"] = -state["epsilon"]
    reflected["c"] = sign * state["c"]
    reflected["x"] = sign * state["x"]
    for key in ("f", "f_alpha", "f_beta", "f_alphaalpha", "f_alphabeta", "f_betabeta"):
        if key in state:
            reflected[key] = -state[key]
    for key in ("x_alpha", "x_beta"):
        if key in state:
            reflected[key] = sign * state[key]
    if "x_epsilon" in state:
        reflected["x_epsilon"] = -sign * state["x_epsilon"]
    return reflected


def assemble_g(state: IterateState) -> np.ndarray:
    """g = (f, f_alpha, f_beta); its zeros are the coalescence points."""
    return np.array([state["f"], state["f_alpha"], state["f_beta"]], dtype=float)


def assemble_G(state: IterateState) -> np.ndarray:
    """Jacobian of g with respect to (alpha, beta, epsilon); f_betaalpha := f_alphabeta."""
    return np.array(
        [
            [state["f_alpha"], state["f_beta"], state["f_epsilon"]],
            [state["f_alphaalpha"], state["f_alphabeta"], state["f_alphaepsilon"]],
            [state["f_alphabeta"], state["f_betabeta"], state["f_betaepsilon"]],
        ],
        dtype=float,
    )


def F_alphabeta(state: IterateState) -> float:
    """Nondegeneracy quantity f_alphaalpha f_betabeta - f_alphabeta^2 (negative at a saddle)."""
    return state["f_alphaalpha"] * state["f_betabeta"] - state["f_alphabeta"] ** 2
