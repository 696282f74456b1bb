import argparse

from defdist.certify import grid_to_frame, sigma_min_grid
from defdist.cli.utils import (
    EXIT_INPUT,
    EXIT_NEWTON,
    FULL_PRECISION,
    INPUT_ERRORS,
    emit,
    fail,
    resolve_matrix,
    start_session,
    stop_session,
)
from defdist.exceptions import NoConvergence
from defdist.logging import Logger


def execute(args: argparse.Namespace) -> None:
    """
    Execute `defdist psgrid`: sample sigma_min(A - zI) on a grid and write it as CSV.

    Args:
        args: Parsed command-line arguments containing:
            - input / gallery, n, block, target: The matrix source
            - re, im: (low, high) ranges of the real and imaginary parts
            - counts: Samples along the real and imaginary axes
            - output: Path to write to (standard output when None)
    """
    start_session(args)
    try:
        A = resolve_matrix(args)

        try:
            grid = sigma_min_grid(A, args.re, args.im, args.counts)
        except INPUT_ERRORS as e:
            fail(f"Invalid grid: {e}", EXIT_INPUT)
        except NoConvergence as e:
            fail(f"Singular value computation failed: {e}", EXIT_NEWTON)

        frame = grid_to_frame(grid)
        emit(frame.to_csv(index=False, float_format=FULL_PRECISION), args.output)
        if args.output is not None:
            Logger().system_info(f"Wrote {len(frame)} grid points to {args.output}")
    finally:
        stop_session()
