from typing import Literal, TypedDict

import numpy as np

from defdist.exceptions import BadParameter
from defdist.linalg.matrix import ComplexMatrix

GalleryKind = Literal["kahan", "grcar", "embedded_kahan"]


class GallerySpec(TypedDict, total=False):
    """Which test matrix to build. target and block only apply to some kinds."""
    kind: GalleryKind
    n: int
    target: float  # kahan / embedded_kahan: value of s^(block-1), default 0.1
    block: int  # embedded_kahan: size of the leading Kahan block, default 6


def kahan(n: int, target: float = 0.1) -> ComplexMatrix:
    """
    Kahan matrix of order n, without the diagonal perturbation some libraries add.

    Upper triangular with A[i, i] = s^i and A[i, j] = -s^i c for j > i, where
    s = target^(1/(n-1)) and c = sqrt(1 - s^2), so the last diagonal entry is
    s^(n-1) = target.

    Raises:
        BadParameter: If n < 2 or target is not in (0, 1)
    """
    if n < 2:
        raise BadParameter(f"kahan needs n >= 2, got {n}")
    if not 0.0 < target < 1.0:
        raise BadParameter(f"kahan needs 0 < target < 1, got {target}")

    s = target ** (1.0 / (n - 1))
    c = np.sqrt(1.0 - s * s)

    powers = s ** np.arange(n)
    A = np.triu(np.full((n, n), -c), k=1) + np.eye(n)
    A = powers[:, np.newaxis] * A

    return A.astype(np.complex128)


def grcar(n: int) -> ComplexMatrix:
    """
    Grcar matrix: -1 on the subdiagonal, 1 on the diagonal and the first
    three superdiagonals, 0 elsewhere.

    Raises:
        BadParameter: If n < 2
    """
    if n < 2:
        raise BadParameter(f"grcar needs n >= 2, got {n}")

    A = -np.eye(n, k=-1)
    for k in range(4):
        A += np.eye(n, k=k)

    return A.astype(np.complex128)


def embedded_kahan(n: int, block: int = 6, target: float = 0.1) -> ComplexMatrix:
    """
    Identity of order n whose leading block x block submatrix is kahan(block, target).

    Raises:
        BadParameter: If block > n or the Kahan block itself is invalid
    """
    if block > n:
        raise BadParameter(f"embedded_kahan needs block <= n, got block={block}, n={n}")

    A = np.eye(n, dtype=np.complex128)
    A[:block, :block] = kahan(block, target)

    return A


def build_matrix(spec: GallerySpec) -> ComplexMatrix:
    """Dispatch a GallerySpec to its generator."""
    kind = spec.get("kind")
    n = spec.get("n")

    if n is None:
        raise BadParameter("gallery spec needs n")
    if n < 2:
        raise BadParameter(f"gallery matrices need n >= 2, got {n}")

    if kind == "kahan":
        return kahan(n, spec.get("target", 0.1))
    if kind == "grcar":
        return grcar(n)
    if kind == "embedded_kahan":
        return embedded_kahan(n, spec.get("block", 6), spec.get("target", 0.1))

    raise BadParameter(
        f"Unknown gallery kind '{kind}'. Supported kinds: embedded_kahan, grcar, kahan"
    )
