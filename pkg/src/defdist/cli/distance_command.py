import argparse
import json
from typing import Any, Dict, List

import numpy as np

from defdist.certify import CertifyTolerances, DefectiveCertificate, certify
from defdist.cli.utils import (
    EXIT_CERTIFY,
    EXIT_INPUT,
    EXIT_NEWTON,
    FULL_PRECISION,
    INPUT_ERRORS,
    emit,
    fail,
    format_complex,
    format_table,
    records_to_frame,
    resolve_matrix,
    start_session,
    stop_session,
)
from defdist.exceptions import (
    CertificationFailed,
    ImaginaryLeak,
    MaxIterationsExceeded,
    NoConvergence,
    SingularBorderedMatrix,
    SingularJacobian,
)
from defdist.implicit import ConvergenceRecord, NewtonSettings, initialize, newton_solve
from defdist.logging import Logger

NEWTON_ERRORS = (MaxIterationsExceeded, SingularJacobian, SingularBorderedMatrix, ImaginaryLeak, NoConvergence)


def execute(args: argparse.Namespace) -> None:
    """
    Execute `defdist distance`: run Newton's method on A and certify the root.

    Args:
        args: Parsed command-line arguments containing:
            - input / gallery, n, block, target: The matrix source
            - z0: Starting point (default 0)
            - eps0: Starting epsilon, None for sigma_min(A - z0 I)
            - svd_at: Shift of the starting singular triplet, None for z0
            - tol, maxit: Override the configured stopping rule
            - format: text, csv or json
            - output: Path to write to (standard output when None)

    Exit codes: 0 on a certified root, 1 on input errors, 2 when Newton's
    method fails, 3 when certification fails.
    """
    config = start_session(args)
    try:
        _run(args, config)
    finally:
        stop_session()


def _run(args: argparse.Namespace, config: Dict[str, Any]) -> None:
    logger = Logger()
    A = resolve_matrix(args)

    newton_conf = dict(config.get("newton") or {})
    if args.tol is not None:
        newton_conf["tol"] = args.tol
    if args.maxit is not None:
        newton_conf["max_iter"] = args.maxit

    tolerances: CertifyTolerances = dict(config.get("certify") or {})
    z0 = args.z0 if args.z0 is not None else 0j

    try:
        settings = NewtonSettings.from_config({"newton": newton_conf})
        if args.eps0 is None:
            init = initialize(A, z0, strategy="svd", svd_at=args.svd_at)
        else:
            init = initialize(A, z0, strategy="explicit", epsilon0=args.eps0, svd_at=args.svd_at)
    except INPUT_ERRORS as e:
        fail(str(e), EXIT_INPUT)
    except NoConvergence as e:
        fail(f"Could not compute the starting singular triplet: {e}", EXIT_NEWTON)

    def on_record(record: ConvergenceRecord) -> None:
        logger.log_metrics(dict(record), step=record["i"])

    try:
        records, final = newton_solve(A, settings, init, on_record=on_record)
    except NEWTON_ERRORS as e:
        partial = getattr(e, "records", None)
        if partial:
            emit(format_table(partial), args.output if args.format == "text" else None)
        fail(f"Newton's method failed: {e}", EXIT_NEWTON)

    try:
        certificate = certify(A, final, tolerances)
    except CertificationFailed as e:
        emit(format_table(records), args.output if args.format == "text" else None)
        fail(str(e), EXIT_CERTIFY)

    emit(_render(args.format, records, certificate), args.output)


def _render(fmt: str, records: List[ConvergenceRecord], certificate: DefectiveCertificate) -> str:
    if fmt == "json":
        return json.dumps(_certificate_json(records, certificate), indent=2)
    if fmt == "csv":
        return records_to_frame(records).to_csv(index=False, float_format=FULL_PRECISION)
    return format_table(records) + "\n\n" + _summary(records, certificate)


def _summary(records: List[ConvergenceRecord], certificate: DefectiveCertificate) -> str:
    first, second = certificate["coalescing_pair"]
    lines = [
        f"z*               = {format_complex(certificate['z_star'])}",
        f"epsilon*         = {certificate['epsilon_star']:.4e}",
        f"residual (right) = {certificate['residual_right']:.4e}",
        f"residual (left)  = {certificate['residual_left']:.4e}",
        f"|u*^H v*|        = {certificate['orthogonality']:.4e}",
        f"F_alphabeta      = {certificate['F_alphabeta']:.4e}",
        f"coalescing pair  = {format_complex(first)}, {format_complex(second)}",
    ]
    if certificate["mirror_point"] is not None:
        lines.append(f"mirror point     = {format_complex(certificate['mirror_point'])}")
    lines.append(f"iterations       = {len(records) - 1}")
    return "\n".join(lines)


def _complex_json(z: complex) -> Dict[str, float]:
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def _certificate_json(records: List[ConvergenceRecord], certificate: DefectiveCertificate) -> Dict[str, Any]:
    z = certificate["z_star"]
    mirror = certificate["mirror_point"]
    return {
        "z_star_re": z.real,
        "z_star_im": z.imag,
        "epsilon_star": certificate["epsilon_star"],
        "residual_right": certificate["residual_right"],
        "residual_left": certificate["residual_left"],
        "orthogonality": certificate["orthogonality"],
        "F_alphabeta": certificate["F_alphabeta"],
        "iterations": len(records) - 1,
        "coalescing_pair": [_complex_json(e) for e in certificate["coalescing_pair"]],
        "mirror_point": None if mirror is None else _complex_json(mirror),
        "records": [dict(r) for r in records],
    }
