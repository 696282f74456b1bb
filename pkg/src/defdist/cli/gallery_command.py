import argparse

from defdist.cli.utils import EXIT_INPUT, emit, fail, gallery_spec, start_session, stop_session
from defdist.exceptions import BadParameter
from defdist.gallery import build_matrix
from defdist.io import format_matrix_market
from defdist.logging import Logger


def execute(args: argparse.Namespace) -> None:
    """
    Execute `defdist gallery`: write a test matrix in Matrix Market format.

    Args:
        args: Parsed command-line arguments containing:
            - kind: kahan, grcar or embedded-kahan
            - n, block, target: Generator parameters
            - output: Path to write to (standard output when None)
    """
    start_session(args)
    try:
        try:
            A = build_matrix(gallery_spec(args.kind, args.n, args.block, args.target))
        except BadParameter as e:
            fail(f"Invalid gallery parameters: {e}", EXIT_INPUT)

        emit(format_matrix_market(A), args.output)
        if args.output is not None:
            Logger().system_info(f"Wrote {args.kind} matrix of order {args.n} to {args.output}")
    finally:
        stop_session()
