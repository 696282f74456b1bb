import warnings
from typing import Any, Callable, Dict, List, Literal, NamedTuple, Optional, Tuple, TypedDict

import numpy as np
from numpy.typing import ArrayLike

from defdist.exceptions import (
    BadParameter,
    DimensionMismatch,
    IllConditionedBorder,
    MaxIterationsExceeded,
    SingularBorderedMatrix,
    SingularJacobian,
)
from defdist.implicit.evaluate import (
    DEFAULT_IMAG_TOL,
    F_alphabeta,
    IterateState,
    assemble_G,
    assemble_g,
    evaluate_f_and_gradient,
    evaluate_jacobian,
    reflect_epsilon,
)
from defdist.linalg.matrix import ComplexMatrix, ComplexVector, as_complex_matrix, shifted
from defdist.linalg.spectral import nearest_eigenvalues, smallest_singular_triplet
from defdist.logging import Logger

# |det G| below this times max(1, |f_epsilon|)^3 means a singular Jacobian.
JACOBIAN_DET_THRESHOLD = 1e-14

InitStrategy = Literal["svd", "explicit"]


class ProblemInstance:
    """A square complex matrix A of order n >= 2 whose distance to defectiveness is sought."""

    def __init__(self, A: ArrayLike) -> None:
        self._A = as_complex_matrix(A)
        if self._A.shape[0] < 2:
            raise DimensionMismatch(
                "A needs n >= 2; a 1x1 matrix has no two eigenvalues to coalesce"
            )

    @property
    def A(self) -> ComplexMatrix:
        return self._A

    @property
    def n(self) -> int:
        return self._A.shape[0]

    @property
    def is_real(self) -> bool:
        return bool(np.all(self._A.imag == 0))

    def coalescing_eigenvalues(self, z: complex) -> Tuple[complex, complex]:
        """The two eigenvalues of A nearest to z."""
        first, second = nearest_eigenvalues(self._A, z, count=2)
        return first, second


class NewtonSettings:
    """Stopping rule and diagnostic thresholds for newton_solve."""

    def __init__(
        self,
        tol: float = 1e-14,
        max_iter: int = 50,
        ill_condition_threshold: float = 1e12,
        degeneracy_threshold: float = 1e-8,
        imag_tol: float = DEFAULT_IMAG_TOL,
    ) -> None:
        if not tol > 0:
            raise BadParameter(f"tol must be positive, got {tol}")
        if int(max_iter) < 1:
            raise BadParameter(f"max_iter must be at least 1, got {max_iter}")
        if not ill_condition_threshold > 0:
            raise BadParameter(
                f"ill_condition_threshold must be positive, got {ill_condition_threshold}"
            )
        if degeneracy_threshold < 0:
            raise BadParameter(
                f"degeneracy_threshold must be non-negative, got {degeneracy_threshold}"
            )
        if not imag_tol > 0:
            raise BadParameter(f"imag_tol must be positive, got {imag_tol}")

        self._tol = float(tol)
        self._max_iter = int(max_iter)
        self._ill_condition_threshold = float(ill_condition_threshold)
        self._degeneracy_threshold = float(degeneracy_threshold)
        self._imag_tol = float(imag_tol)

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "NewtonSettings":
        """Build settings from the `newton` section of a loaded configuration."""
        section = dict(config.get("newton") or {})
        known = {"tol", "max_iter", "ill_condition_threshold", "degeneracy_threshold", "imag_tol"}
        unknown = sorted(set(section) - known)
        if unknown:
            raise BadParameter(f"Unknown newton settings: {', '.join(unknown)}")
        return cls(**section)

    @property
    def tol(self) -> float:
        return self._tol

    @property
    def max_iter(self) -> int:
        return self._max_iter

    @property
    def ill_condition_threshold(self) -> float:
        return self._ill_condition_threshold

    @property
    def degeneracy_threshold(self) -> float:
        return self._degeneracy_threshold

    @property
    def imag_tol(self) -> float:
        return self._imag_tol


class ConvergenceRecord(TypedDict):
    """One row of the convergence table."""
    i: int
    alpha: float
    beta: float
    epsilon: float
    g_norm: float
    F_alphabeta: float


class InitialGuess(NamedTuple):
    alpha0: float
    beta0: float
    epsilon0: float
    c: ComplexVector


def initialize(
    A: ArrayLike,
    z0: complex = 0.0,
    strategy: InitStrategy = "svd",
    epsilon0: Optional[float] = None,
    u0: Optional[ComplexVector] = None,
    v0: Optional[ComplexVector] = None,
    svd_at: Optional[complex] = None,
) -> InitialGuess:
    """
    Starting point for newton_solve, with the border vector c = x0 = [u0; v0].

    With strategy "svd", (epsilon0, u0, v0) is the smallest singular triplet
    of A - z0 I. With "explicit", epsilon0 is taken as given and u0, v0 fall
    back to that triplet when omitted (e.g. a start at epsilon0 = 0 with the
    singular vectors of A - z0 I).

    svd_at moves the triplet to A - svd_at I while the start stays at z0;
    svd_at=0 starts from sigma_min(A) and the singular vectors of A itself.

    Raises:
        BadParameter: If strategy is unknown or "explicit" lacks epsilon0
        NoConvergence: From smallest_singular_triplet
    """
    problem = ProblemInstance(A)
    z0 = complex(z0)

    if strategy not in ("svd", "explicit"):
        raise BadParameter(f"Unknown initialization strategy '{strategy}'. Use 'svd' or 'explicit'.")
    if strategy == "explicit" and epsilon0 is None:
        raise BadParameter("The explicit strategy needs epsilon0")

    if strategy == "svd" or u0 is None or v0 is None:
        shift = z0 if svd_at is None else complex(svd_at)
        triplet = smallest_singular_triplet(shifted(problem.A, shift))
        if strategy == "svd":
            epsilon0 = triplet["sigma"]
        u0 = triplet["u"] if u0 is None else u0
        v0 = triplet["v"] if v0 is None else v0

    u0 = np.asarray(u0, dtype=np.complex128).reshape(-1)
    v0 = np.asarray(v0, dtype=np.complex128).reshape(-1)
    if u0.shape[0] != problem.n or v0.shape[0] != problem.n:
        raise DimensionMismatch(f"u0 and v0 must have length {problem.n}")

    return InitialGuess(z0.real, z0.imag, float(epsilon0), np.concatenate([u0, v0]))


def _evaluate(A: ComplexMatrix, c: ComplexVector, alpha: float, beta: float,
              epsilon: float, settings: NewtonSettings) -> IterateState:
    state = evaluate_f_and_gradient(A, c, alpha, beta, epsilon, settings.imag_tol)
    return evaluate_jacobian(A, c, state, settings.imag_tol)


def _normalized(x: ComplexVector) -> ComplexVector:
    return x / np.linalg.norm(x)


def newton_solve(
    A: ArrayLike,
    settings: Optional[NewtonSettings] = None,
    init: Optional[InitialGuess] = None,
    on_record: Optional[Callable[[ConvergenceRecord], None]] = None,
) -> Tuple[List[ConvergenceRecord], IterateState]:
    """
    Newton's method on g(alpha, beta, epsilon) = (f, f_alpha, f_beta) = 0.

    Each iterate costs one factorization of M and nine solves. The border c
    stays fixed; if M turns singular, or its condition estimate exceeds the
    threshold, the run is re-bordered once with c = x / ||x|| at the current
    point, and a second failure is fatal. No damping or line search is used.

    An iterate with epsilon < 0 is the mirror image of (alpha, beta, -epsilon)
    under the border [c_u; -c_v], so records carry |epsilon|, and a root found
    at negative epsilon is returned reflected, with epsilon* >= 0.

    Args:
        A: Square complex matrix, n >= 2.
        settings: Stopping rule and thresholds (defaults when None).
        init: (alpha0, beta0, epsilon0, c); defaults to initialize(A, 0).
        on_record: Called with every ConvergenceRecord as it is produced.

    Returns:
        The convergence records (row 0 is the starting point) and the final
        fully evaluated state, always with epsilon >= 0.

    Raises:
        MaxIterationsExceeded: If ||g|| >= tol after max_iter updates
        SingularJacobian: If |det G| < 1e-14 max(1, |f_epsilon|)^3
        SingularBorderedMatrix: If M stays singular or ill-conditioned after re-bordering
    """
    logger = Logger()
    problem = ProblemInstance(A)
    settings = settings if settings is not None else NewtonSettings()
    init = init if init is not None else initialize(problem.A, 0.0)

    alpha, beta, epsilon, c = init
    alpha, beta, epsilon = float(alpha), float(beta), float(epsilon)
    c = np.asarray(c, dtype=np.complex128).reshape(-1)

    if c.shape[0] != 2 * problem.n:
        raise DimensionMismatch(f"Border vector has length {c.shape[0]}, expected {2 * problem.n}")
    if not np.linalg.norm(c) > 0:
        raise BadParameter("Border vector c must be nonzero")

    records: List[ConvergenceRecord] = []
    last_x: Optional[ComplexVector] = None
    rebordered = False
    i = 0

    while True:
        try:
            state = _evaluate(problem.A, c, alpha, beta, epsilon, settings)
        except SingularBorderedMatrix:
            if rebordered or last_x is None:
                raise
            logger.system_warning(
                f"Bordered matrix singular at iteration {i}; re-bordering with the current x."
            )
            c = _normalized(last_x)
            rebordered = True
            continue

        if state["condition"] > settings.ill_condition_threshold:
            message = (
                f"Bordered matrix condition estimate {state['condition']:.3e} exceeds "
                f"{settings.ill_condition_threshold:.3e} at iteration {i}; "
                "another singular value may be close to epsilon."
            )
            warnings.warn(message, IllConditionedBorder, stacklevel=2)
            logger.system_warning(message)
            if rebordered:
                raise SingularBorderedMatrix(
                    f"Bordered matrix remains ill-conditioned after re-bordering "
                    f"(condition estimate {state['condition']:.3e}); {SingularBorderedMatrix.advice}"
                )
            c = _normalized(state["x"])
            rebordered = True
            continue

        g = assemble_g(state)
        G = assemble_G(state)
        g_norm = float(np.linalg.norm(g))
        F = F_alphabeta(state)

        record: ConvergenceRecord = {
            "i": i,
            "alpha": alpha,
            "beta": beta,
            "epsilon": abs(epsilon),
            "g_norm": g_norm,
            "F_alphabeta": F,
        }
        records.append(record)
        if on_record is not None:
            on_record(record)

        if g_norm < settings.tol:
            if abs(F) < settings.degeneracy_threshold * state["f_epsilon"] ** 2:
                logger.system_warning(
                    f"F_alphabeta = {F:.3e} is close to zero at the root; a Jordan block "
                    "of dimension greater than 2 may be nearby."
                )
            if epsilon < 0:
                state = reflect_epsilon(state)
            return records, state

        if i >= settings.max_iter:
            raise MaxIterationsExceeded(
                f"Newton's method did not reach ||g|| < {settings.tol:.1e} in "
                f"{settings.max_iter} iterations (last ||g|| = {g_norm:.4e})",
                records,
            )

        det = float(np.linalg.det(G))
        if abs(det) < JACOBIAN_DET_THRESHOLD * max(1.0, abs(state["f_epsilon"])) ** 3:
            raise SingularJacobian(
                f"Jacobian is singular at iteration {i} (det = {det:.3e}, "
                f"F_alphabeta = {F:.3e}); a Jordan block of dimension greater than 2 "
                "may be nearby.",
                det=det,
                F_alphabeta=F,
                records=records,
            )

        delta = np.linalg.solve(G, -g)
        alpha += float(delta[0])
        beta += float(delta[1])
        epsilon += float(delta[2])

        last_x = state["x"]
        i += 1
