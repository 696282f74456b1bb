import argparse
import sys

import defdist.cli.distance_command as distance_command
import defdist.cli.gallery_command as gallery_command
import defdist.cli.psgrid_command as psgrid_command
from defdist.cli.utils import (
    EXIT_INPUT,
    GALLERY_CHOICES,
    add_matrix_source,
    complex_pair,
    epsilon_start,
    float_range,
    int_pair,
)
from defdist.logging import Logger


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors leave with the input-error exit code rather than argparse's 2."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        Logger().system_exception(f"{self.prog}: {message}")
        sys.exit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(
        prog="defdist",
        description="Distance to the nearest defective matrix by the implicit determinant method",
    )
    parser.add_argument(
        "--config",
        metavar="PATH",
        help="YAML configuration file (default: defdist.yaml when present)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # --- distance ---
    p_distance = subparsers.add_parser(
        "distance", help="Find the nearest coalescence point and certify it"
    )
    add_matrix_source(p_distance)
    p_distance.add_argument(
        "--z0", type=complex_pair, default=None, metavar="RE,IM",
        help="Starting point z0 (default: 0,0)",
    )
    p_distance.add_argument(
        "--eps0", type=epsilon_start, default=None, metavar="VAL|auto",
        help="Starting epsilon (default: auto, sigma_min(A - z0 I))",
    )
    p_distance.add_argument(
        "--svd-at", type=complex_pair, default=None, metavar="RE,IM",
        help="Take the starting singular triplet of A - zI at this z instead of z0",
    )
    p_distance.add_argument("--tol", type=float, default=None, help="Stop when ||g|| < tol (default: 1e-14)")
    p_distance.add_argument("--maxit", type=int, default=None, help="Maximum Newton steps (default: 50)")
    p_distance.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_distance.add_argument("-o", "--output", metavar="PATH", help="Write results here instead of stdout")
    p_distance.set_defaults(func=distance_command.execute)

    # --- gallery ---
    p_gallery = subparsers.add_parser("gallery", help="Write a test matrix in Matrix Market format")
    p_gallery.add_argument("kind", choices=GALLERY_CHOICES)
    p_gallery.add_argument("--n", type=int, required=True, help="Order of the matrix")
    p_gallery.add_argument("--block", type=int, default=6,
                           help="Kahan block size for embedded-kahan (default: 6)")
    p_gallery.add_argument("--target", type=float, default=0.1,
                           help="Smallest Kahan diagonal entry (default: 0.1)")
    p_gallery.add_argument("-o", "--output", metavar="PATH", help="Write the matrix here instead of stdout")
    p_gallery.set_defaults(func=gallery_command.execute)

    # --- psgrid ---
    p_psgrid = subparsers.add_parser("psgrid", help="Sample sigma_min(A - zI) on a grid, as CSV")
    add_matrix_source(p_psgrid)
    p_psgrid.add_argument("--re", type=float_range, required=True, metavar="LO,HI",
                          help="Range of the real part")
    p_psgrid.add_argument("--im", type=float_range, required=True, metavar="LO,HI",
                          help="Range of the imaginary part")
    p_psgrid.add_argument("--counts", type=int_pair, default=(51, 51), metavar="NRE,NIM",
                          help="Samples along each axis (default: 51,51)")
    p_psgrid.add_argument("-o", "--output", metavar="PATH", help="Write the CSV here instead of stdout")
    p_psgrid.set_defaults(func=psgrid_command.execute)

    return parser


def main(argv=None):
    parser = build_parser()
    # parse_args exits with EXIT_INPUT on malformed flags
    args = parser.parse_args(argv)

    if hasattr(args, "func"):
        args.func(args)
    else:
        parser.print_help()


if __name__ == "__main__":
    main()
