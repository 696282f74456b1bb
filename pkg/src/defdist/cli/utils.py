import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional, Tuple

import pandas as pd
import yaml
from colorama import Fore, Style

from defdist.args import Parser
from defdist.exceptions import BadParameter, DimensionMismatch, NonFinite, ParseError, UnsupportedFormat
from defdist.gallery import GallerySpec, build_matrix
from defdist.io import read_matrix_market
from defdist.linalg.matrix import ComplexMatrix
from defdist.logging import Logger
from defdist.utils import generate_run_id

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NEWTON = 2
EXIT_CERTIFY = 3

GALLERY_CHOICES = ("kahan", "grcar", "embedded-kahan")
TABLE_COLUMNS = ("i", "alpha", "beta", "epsilon", "g_norm", "F_alphabeta")
FULL_PRECISION = "%.17g"

# Errors caused by what the user handed in, all mapped to EXIT_INPUT
INPUT_ERRORS = (ParseError, UnsupportedFormat, BadParameter, DimensionMismatch, NonFinite)


def fail(message: str, code: int) -> NoReturn:
    """Report message on standard error and leave with the given exit code."""
    Logger().system_exception(message)
    sys.exit(code)


# ==========================================================
# ARGUMENT TYPES
# ==========================================================

def complex_pair(text: str) -> complex:
    """argparse type for `RE,IM`."""
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got '{text}'")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two numbers RE,IM, got '{text}'") from None


def float_range(text: str) -> Tuple[float, float]:
    """argparse type for `LO,HI`."""
    z = complex_pair(text)
    return z.real, z.imag


def int_pair(text: str) -> Tuple[int, int]:
    """argparse type for `N1,N2`."""
    parts = text.split(",")
    try:
        first, second = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers N1,N2, got '{text}'") from None
    return first, second


def epsilon_start(text: str) -> Optional[float]:
    """argparse type for `--eps0`: a number, or `auto` for sigma_min(A - z0 I)."""
    if text.strip().lower() == "auto":
        return None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'auto', got '{text}'") from None


# ==========================================================
# MATRIX SOURCE
# ==========================================================

def add_matrix_source(parser: argparse.ArgumentParser) -> None:
    """--input PATH | --gallery KIND, with the gallery size options."""
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", metavar="PATH", help="Matrix Market file holding A")
    source.add_argument("--gallery", choices=GALLERY_CHOICES, help="Built-in test matrix")

    parser.add_argument("--n", type=int, help="Order of the gallery matrix")
    parser.add_argument("--block", type=int, default=6,
                        help="Kahan block size for embedded-kahan (default: 6)")
    parser.add_argument("--target", type=float, default=0.1,
                        help="Smallest Kahan diagonal entry (default: 0.1)")


def gallery_spec(kind: str, n: Optional[int], block: int, target: float) -> GallerySpec:
    spec: GallerySpec = {"kind": kind.replace("-", "_"), "n": n, "target": target}
    if spec["kind"] == "embedded_kahan":
        spec["block"] = block
    return spec


def resolve_matrix(args: argparse.Namespace) -> ComplexMatrix:
    """Load A from --input or build it from --gallery; exits with EXIT_INPUT on failure."""
    if args.input is not None:
        path = Path(args.input)
        try:
            return read_matrix_market(path)
        except FileNotFoundError:
            fail(f"Matrix file {Fore.LIGHTYELLOW_EX}{path}{Style.RESET_ALL} was not found.", EXIT_INPUT)
        except OSError as e:
            fail(f"Cannot read matrix file {path}: {e}", EXIT_INPUT)
        except INPUT_ERRORS as e:
            fail(f"Invalid matrix file {path}: {e}", EXIT_INPUT)

    try:
        return build_matrix(gallery_spec(args.gallery, args.n, args.block, args.target))
    except BadParameter as e:
        fail(f"Invalid gallery parameters: {e}", EXIT_INPUT)


# ==========================================================
# SESSION
# ==========================================================

def start_session(args: argparse.Namespace) -> Dict[str, Any]:
    """
    Load the configuration and, when it names a `logger.dir`, start file
    logging (and wandb tracking if a `wandb` section is present).
    """
    parser = Parser()
    try:
        config = parser.load_configuration(getattr(args, "config", None))
    except FileNotFoundError:
        fail(f"Configuration file {args.config} was not found.", EXIT_INPUT)
    except (yaml.YAMLError, ValueError) as e:
        fail(f"Invalid configuration file: {e}", EXIT_INPUT)

    log_dir = (config.get("logger") or {}).get("dir")
    if log_dir:
        try:
            Logger().start(log_dir, config["project"], generate_run_id(), config.get("wandb"))
        except (OSError, RuntimeError) as e:
            fail(f"Could not start logging: {e}", EXIT_INPUT)
        parser.print()

    return config


def stop_session() -> None:
    Logger().stop()


# ==========================================================
# OUTPUT
# ==========================================================

def format_complex(z: complex) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real:.4e} {sign} {abs(z.imag):.4e}i"


def format_table(records: List[Dict[str, Any]]) -> str:
    """Convergence table, one row per iterate, 5 significant digits."""
    header = f"{'i':>4}" + "".join(f"{name:>14}" for name in TABLE_COLUMNS[1:])
    lines = [header]
    for r in records:
        lines.append(f"{r['i']:>4d}" + "".join(f"{r[name]:>14.4e}" for name in TABLE_COLUMNS[1:]))
    return "\n".join(lines)


def records_to_frame(records: List[Dict[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame.from_records(records, columns=list(TABLE_COLUMNS))


def emit(text: str, output: Optional[str]) -> None:
    """Write text to the output path, or to standard output when none is given."""
    if output is None:
        print(text, end="" if text.endswith("\n") else "\n")
        return
    try:
        Path(output).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    except OSError as e:
        fail(f"Cannot write {output}: {e}", EXIT_INPUT)
