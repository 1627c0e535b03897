"""
Command-line interface

Usage:
    python -m app.cli invariants --in polytope.json
    echo '[[0,0],[2,0],[0,2]]' | python -m app.cli lstar
    python -m app.cli enumerate --dim 3 --max-vol 8 --out results/dim3.jsonl
    python -m app.cli scan-q1 --in results/dim3.jsonl --format markdown
    python -m app.cli verify-paper

JSON goes to stdout, logging to stderr. Exit codes: 0 ok, 1 verification
failure, 2 input error, 3 internal consistency error.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional

from pydantic import BaseModel, ValidationError

from app import __version__
from app.api.schemas import (
    Classification3DResponse,
    EhrhartResponse,
    GorensteinResponse,
    GPolyResponse,
    InvariantsResponse,
    LocalHStarResponse,
    PolytopeInput,
    Question1Report,
    RunConfig,
    VerdictModel,
    WidthResponse,
)
from app.config import settings
from app.exceptions import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_VERIFICATION,
    InputError,
    LatticeToolError,
    exit_code_for,
)
from app.services.classify_enum import (
    classify_thin_3d,
    degree_one_check,
    gorenstein_3d_check,
    interior_inequality_check,
    lstar_3d,
    question1_scan,
    read_log,
    thin_criterion_3d,
    write_enumeration_log,
)
from app.services.counting import box_polynomial, hstar, is_hollow, newton_number
from app.services.gorenstein import gorenstein_checks, gorenstein_data, require_gorenstein
from app.services.local_hstar import (
    Verdict,
    deg_lstar_law,
    hollow_thin_check,
    is_trivially_thin,
    local_hstar,
)
from app.services.golden_suite import load_golden, run_suite
from app.services.polytope import (
    LatticePolytope,
    build,
    is_lattice_pyramid,
    is_spanning,
    lattice_width,
)
from app.services.poset_poly import proper_face_record
from app.services.report_renderer import ReportRenderer

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


# =============================================================================
# Helpers
# =============================================================================


def _read_polytope(path: Optional[Path]) -> LatticePolytope:
    """Vertex JSON (``{"vertices": [...]}`` or a bare list) from a file or stdin."""
    text = path.read_text(encoding="utf-8") if path is not None else sys.stdin.read()
    payload = json.loads(text)
    if isinstance(payload, list):
        payload = {"vertices": payload}
    data = PolytopeInput.model_validate(payload)
    return build(data.vertices)


def _option(args: argparse.Namespace, name: str, default: int) -> int:
    value = getattr(args, name, None)
    return default if value is None else value


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        width_bound=_option(args, "width_bound", settings.width_bound),
        join_pair_cap=_option(args, "join_pair_cap", settings.join_pair_cap),
        jobs=_option(args, "jobs", settings.enum_jobs),
        dedup_iso=bool(getattr(args, "dedup_iso", False) or settings.dedup_iso),
        version=__version__,
    )


def _verdicts(checks: list[Verdict]) -> list[VerdictModel]:
    return [VerdictModel.model_validate(c.to_dict()) for c in checks]


def _emit(model: BaseModel):
    print(model.model_dump_json(indent=2))


def _failed(checks: list[Verdict]) -> bool:
    return any(c.applicable and not c.passed for c in checks)


# =============================================================================
# Polytope commands
# =============================================================================


def cmd_invariants(args: argparse.Namespace) -> int:
    config = _run_config(args)
    P = _read_polytope(args.input)
    data = hstar(P)
    report = local_hstar(P)
    record = proper_face_record(P)
    width = lattice_width(P, config.width_bound)
    gdata = gorenstein_data(P)

    checks = list(report.checks)
    checks += [hollow_thin_check(P), deg_lstar_law(P), degree_one_check(P)]
    if P.dim == 3:
        checks += [interior_inequality_check(P), gorenstein_3d_check(P)]
    if gdata.is_gorenstein:
        checks += gorenstein_checks(P, config.join_pair_cap)

    response = InvariantsResponse(
        dim=P.dim,
        vertices=[list(v) for v in P.vertices],
        n_vertices=P.n_vertices,
        f_vector=list(P.face_lattice().f_vector()),
        volume=P.volume,
        hstar=data.hstar.to_list(),
        degree=data.degree,
        codegree=data.codegree,
        lstar=report.lstar.to_list(),
        g=record.g.to_list(),
        h=record.h.to_list(),
        thin=report.is_thin,
        trivially_thin=is_trivially_thin(P),
        hollow=P.dim > 0 and is_hollow(P),
        spanning=is_spanning(P),
        width=width.width,
        width_direction=list(width.direction),
        pyramid=is_lattice_pyramid(P) is not None,
        gorenstein=gdata.is_gorenstein,
        newton_number=newton_number(P) if P.is_simplex else None,
        box=box_polynomial(P).to_list() if P.is_simplex else None,
        checks=_verdicts(checks),
        run_config=config,
    )
    if args.format == "text":
        print(ReportRenderer().render_invariants(response.model_dump()), end="")
    else:
        _emit(response)
    return EXIT_VERIFICATION if _failed(checks) else EXIT_OK


def cmd_hstar(args: argparse.Namespace) -> int:
    P = _read_polytope(args.input)
    data = hstar(P, method=args.method)
    _emit(
        EhrhartResponse(
            dim=data.dim,
            hstar=data.hstar.to_list(),
            degree=data.degree,
            codegree=data.codegree,
            volume=data.volume,
            dilate_counts=list(data.dilate_counts),
            run_config=_run_config(args),
        )
    )
    return EXIT_OK


def cmd_lstar(args: argparse.Namespace) -> int:
    P = _read_polytope(args.input)
    report = local_hstar(P, audit=not args.no_audit)
    _emit(
        LocalHStarResponse(
            dim=report.dim,
            lstar=report.lstar.to_list(),
            thin=report.is_thin,
            trivially_thin=is_trivially_thin(P),
            checks=_verdicts(list(report.checks)),
            run_config=_run_config(args),
        )
    )
    return EXIT_OK


def cmd_gpoly(args: argparse.Namespace) -> int:
    P = _read_polytope(args.input)
    record = proper_face_record(P)
    _emit(
        GPolyResponse(
            dim=P.dim,
            f_vector=list(P.face_lattice().f_vector()),
            f=record.f.to_list(),
            g=record.g.to_list(),
            h=record.h.to_list(),
            run_config=_run_config(args),
        )
    )
    return EXIT_OK


def cmd_gorenstein(args: argparse.Namespace) -> int:
    config = _run_config(args)
    P = _read_polytope(args.input)
    data = gorenstein_data(P)
    checks = gorenstein_checks(P, config.join_pair_cap) if data.is_gorenstein else []
    _emit(
        GorensteinResponse(
            dim=P.dim,
            gorenstein=data.is_gorenstein,
            codegree=data.codegree,
            hstar=data.hstar.to_list(),
            interior_point=list(data.interior_point) if data.interior_point is not None else None,
            dual_vertices=[list(v) for v in data.dual.vertices] if data.dual is not None else None,
            checks=_verdicts(checks),
            run_config=config,
        )
    )
    return EXIT_VERIFICATION if _failed(checks) else EXIT_OK


def cmd_dual(args: argparse.Namespace) -> int:
    P = _read_polytope(args.input)
    dual = require_gorenstein(P).dual
    print(json.dumps({"vertices": [list(v) for v in dual.vertices]}))
    return EXIT_OK


def cmd_classify3d(args: argparse.Namespace) -> int:
    P = _read_polytope(args.input)
    classification = classify_thin_3d(P)
    report = local_hstar(P)
    checks = [interior_inequality_check(P), degree_one_check(P), gorenstein_3d_check(P)]
    _emit(
        Classification3DResponse(
            verdict=classification.verdict.value,
            witness=classification.witness,
            lstar=report.lstar.to_list(),
            lstar_closed_form=lstar_3d(P).to_list(),
            criterion=thin_criterion_3d(P),
            checks=_verdicts(checks),
            run_config=_run_config(args),
        )
    )
    return EXIT_VERIFICATION if _failed(checks) else EXIT_OK


def cmd_width(args: argparse.Namespace) -> int:
    config = _run_config(args)
    P = _read_polytope(args.input)
    result = lattice_width(P, config.width_bound)
    _emit(
        WidthResponse(
            width=result.width,
            direction=list(result.direction),
            bound=result.bound,
            exact_within_bound=result.exact_within_bound,
            run_config=config,
        )
    )
    return EXIT_OK


# =============================================================================
# Enumeration and reproduction commands
# =============================================================================


def cmd_enumerate(args: argparse.Namespace) -> int:
    config = _run_config(args)
    out = args.out or settings.results_dir / f"simplices_dim{args.dim}_vol{args.max_vol}.jsonl"
    summary = write_enumeration_log(
        Path(out),
        args.dim,
        args.max_vol,
        jobs=config.jobs,
        dedup_iso=config.dedup_iso,
        resume=args.resume,
    )
    print(
        json.dumps(
            {
                "path": str(summary.path),
                "dim": summary.dim,
                "max_volume": summary.max_volume,
                "records_written": summary.records_written,
                "skipped_volumes": list(summary.skipped_volumes),
                "thin": summary.thin,
                "unresolved": summary.counterexamples,
                "run_config": config.model_dump(),
            },
            indent=2,
        )
    )
    return EXIT_OK


def cmd_scan_q1(args: argparse.Namespace) -> int:
    if args.input is None:
        raise InputError("scan-q1 needs --in FILE")
    log = read_log(args.input)
    result = question1_scan(log.records)
    report = Question1Report(**result.to_dict(), run_config=_run_config(args))
    if args.format == "markdown":
        print(ReportRenderer().render_question1(report.model_dump()), end="")
    else:
        _emit(report)
    return EXIT_VERIFICATION if result.counterexamples else EXIT_OK


def cmd_verify_paper(args: argparse.Namespace) -> int:
    suite = run_suite(load_golden(args.golden))
    if args.format == "json":
        print(json.dumps(suite.to_dict(), indent=2, sort_keys=True))
    else:
        print(ReportRenderer().render_suite(suite.to_dict()), end="")
    suite.raise_for_failures()
    return EXIT_OK


# =============================================================================
# Parser
# =============================================================================


def _polytope_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--in", dest="input", type=Path, help="Vertex JSON file (default: stdin)"
    )
    parent.add_argument(
        "--width-bound", type=int, help=f"Width search bound (default {settings.width_bound})"
    )
    parent.add_argument("--join-pair-cap", type=int, help="Cap on scanned join pairs")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m app.cli", description="Ehrhart invariants of lattice polytopes"
    )
    parser.add_argument("--version", action="version", version=__version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings only")
    sub = parser.add_subparsers(dest="command", required=True)
    poly = _polytope_parser()

    p = sub.add_parser("invariants", parents=[poly], help="Every invariant and audit verdict")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(handler=cmd_invariants)

    p = sub.add_parser("hstar", parents=[poly], help="h*-polynomial")
    p.add_argument("--method", choices=["reciprocity", "direct"], default="reciprocity")
    p.set_defaults(handler=cmd_hstar)

    p = sub.add_parser("lstar", parents=[poly], help="Local h*-polynomial")
    p.add_argument("--no-audit", action="store_true", help="Skip the self-audit")
    p.set_defaults(handler=cmd_lstar)

    p = sub.add_parser("gpoly", parents=[poly], help="Toric f/g/h of the face poset")
    p.set_defaults(handler=cmd_gpoly)

    p = sub.add_parser("gorenstein", parents=[poly], help="Gorenstein data and verdicts")
    p.set_defaults(handler=cmd_gorenstein)

    p = sub.add_parser("dual", parents=[poly], help="Dual Gorenstein polytope")
    p.set_defaults(handler=cmd_dual)

    p = sub.add_parser("classify3d", parents=[poly], help="Classify a 3-polytope")
    p.set_defaults(handler=cmd_classify3d)

    p = sub.add_parser("width", parents=[poly], help="Lattice width")
    p.set_defaults(handler=cmd_width)

    p = sub.add_parser("enumerate", help="Enumerate and classify simplices")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-vol", type=int, required=True)
    p.add_argument("--out", type=Path, help="JSONL log (default under results_dir)")
    p.add_argument("--jobs", type=int, help="Worker processes")
    p.add_argument("--dedup-iso", action="store_true", help="One record per unimodular class")
    p.add_argument("--resume", action="store_true", help="Skip volumes already in the log")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("scan-q1", help="Summarize an enumeration log")
    p.add_argument("--in", dest="input", type=Path)
    p.add_argument("--format", choices=["json", "markdown"], default="json")
    p.set_defaults(handler=cmd_scan_q1)

    p = sub.add_parser("verify-paper", help="Run the golden reproduction suite")
    p.add_argument("--golden", type=Path, help="Alternative golden file")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(handler=cmd_verify_paper)

    return parser


def _configure_logging(args: argparse.Namespace):
    level = getattr(logging, settings.log_level.upper(), logging.INFO)
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (ValidationError, json.JSONDecodeError, OSError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INPUT
    except LatticeToolError as e:
        witness: Any = getattr(e, "witness", None)
        if witness:
            logger.error(f"{e}: {json.dumps(witness, default=str)}")
        else:
            logger.error(f"{type(e).__name__}: {e}")
        return exit_code_for(e)
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
