from pathlib import Path
from typing import Tuple, TypedDict

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from defdist.exceptions import BadParameter
from defdist.linalg.matrix import as_complex_matrix, shifted
from defdist.linalg.spectral import smallest_singular_value

CSV_FLOAT_FORMAT = "%.17g"


class PseudospectrumGrid(TypedDict):
    """sigma_min(A - zI) sampled on a rectangle; rows follow im, columns follow re."""
    re: np.ndarray
    im: np.ndarray
    sigma_min: np.ndarray  # shape (len(im), len(re))


def sigma_min_grid(
    A: ArrayLike,
    re_range: Tuple[float, float],
    im_range: Tuple[float, float],
    counts: Tuple[int, int],
) -> PseudospectrumGrid:
    """
    Evaluate sigma_min(A - zI) on an evenly spaced grid, end points included.

    Args:
        A: Square matrix.
        re_range: (lowest, highest) real part.
        im_range: (lowest, highest) imaginary part.
        counts: Number of samples along the real and imaginary axes, each >= 2.

    Raises:
        BadParameter: If a count is below 2 or a range is reversed
    """
    A = as_complex_matrix(A)
    n_re, n_im = counts

    if n_re < 2 or n_im < 2:
        raise BadParameter(f"Grid needs at least 2 samples per axis, got {counts}")
    if re_range[1] < re_range[0] or im_range[1] < im_range[0]:
        raise BadParameter(f"Grid ranges must be increasing, got {re_range} and {im_range}")

    re = np.linspace(re_range[0], re_range[1], int(n_re))
    im = np.linspace(im_range[0], im_range[1], int(n_im))

    values = np.empty((im.size, re.size))
    for j, y in enumerate(im):
        for i, x in enumerate(re):
            values[j, i] = smallest_singular_value(shifted(A, complex(x, y)))

    return {"re": re, "im": im, "sigma_min": values}


def grid_to_frame(grid: PseudospectrumGrid) -> pd.DataFrame:
    """Long table with columns re, im, sigma_min; im is the outer loop."""
    re_mesh, im_mesh = np.meshgrid(grid["re"], grid["im"])
    return pd.DataFrame({
        "re": re_mesh.ravel(),
        "im": im_mesh.ravel(),
        "sigma_min": np.asarray(grid["sigma_min"]).ravel(),
    })


def write_grid_csv(grid: PseudospectrumGrid, path: str | Path) -> None:
    """Write the grid as CSV with header re,im,sigma_min and 17 significant digits."""
    grid_to_frame(grid).to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
