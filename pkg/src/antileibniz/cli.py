"""Command line front end.

Exit codes: 0 when every check passes, 1 when a law or predicate fails
(witnesses are in the report), 2 for malformed input or usage errors.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from . import classify as cl
from . import functors as fn
from . import operators as op
from .core import AlgebraBundle, DimensionError, RepBundle
from .fields import FieldError, FieldSpec
from .io import Workspace, WorkspaceError, bundle_workspace, dumps, parse_workspace, workspace_to_obj
from .laws import CLASS_LAW, LAWS, LawReport, certify, check_law, check_representation

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


def _law_id(text: str) -> str:
    law = text.replace("-", "_")
    if law not in LAWS:
        raise argparse.ArgumentTypeError(f"unknown law {text!r}")
    return law


def report_body(command: str, reports: Sequence[tuple[str, LawReport]], field: FieldSpec,
                derived: dict | None = None) -> dict:
    """The comparable part of a report: no timing, canonical order."""
    body = {
        "command": command,
        "status": "pass" if all(r.passed for _, r in reports) else "fail",
        "reports": [{"subject": s, **r.to_dict(field)} for s, r in reports],
    }
    if derived is not None:
        body["derived"] = derived
    return body


def error_body(command: str, message: str) -> dict:
    return {"command": command, "status": "error", "reports": [], "error": message}


# -- commands ---------------------------------------------------------------------


def _claimed_law(a: AlgebraBundle) -> str:
    if a.claimed_class not in CLASS_LAW:
        raise UsageError("algebra has no claimed class to check; pass --law")
    return CLASS_LAW[a.claimed_class]


def run_check(ws: Workspace, args) -> dict:
    reports = []
    if args.rep:
        reports.append((args.rep, check_representation(ws.representation(args.rep))))
    if args.algebra:
        a = ws.algebra(args.algebra)
        law = args.law or _claimed_law(a)
        reports.append((args.algebra, check_law(a, law, strict=args.strict_dialgebra)))
    if not reports:
        raise UsageError("check needs --algebra or --rep")
    return report_body("check", reports, ws.field)


def _one(ids: Sequence[str], what: str) -> str:
    if len(ids) != 1:
        raise UsageError(f"{what} takes exactly one input")
    return ids[0]


def derive_object(ws: Workspace, functor: str, ids: Sequence[str], swap: bool = False,
                  force: bool = False, strict: bool = False):
    """Apply a functor by name; returns an AlgebraBundle or RepBundle."""
    if functor in ("anticommutator", "dicommutator", "collapse", "coadjoint", "kernel-quotient"):
        a = ws.algebra(_one(ids, functor))
        if functor == "anticommutator":
            return fn.anticommutator(a, force=force)
        if functor == "dicommutator":
            return fn.anti_dicommutator(a, swap=swap, force=force, strict=strict)
        if functor == "collapse":
            return fn.trialgebra_collapse(a, swap=swap, force=force, strict=strict)
        if functor == "coadjoint":
            return fn.coadjoint(a, force=force)
        return fn.kernel_and_quotient(a, force=force)[1]
    r = ws.representation(_one(ids, functor))
    return {
        "semidirect": fn.semidirect,
        "hemisemidirect": fn.hemisemidirect,
        "hemisemidirect-trialgebra": fn.hemisemidirect_trialgebra,
        "dual-rep": fn.dual_representation,
    }[functor](r, force=force)


def certification(obj) -> LawReport:
    return check_representation(obj) if isinstance(obj, RepBundle) else certify(obj)


def derived_document(obj) -> dict:
    if isinstance(obj, RepBundle):
        ws = bundle_workspace(algebras={"algebra": obj.algebra}, reps={"derived": obj})
    else:
        ws = bundle_workspace(algebras={"derived": obj})
    return workspace_to_obj(ws)


def run_derive(ws: Workspace, args) -> dict:
    try:
        obj = derive_object(ws, args.functor, args.inputs, args.swap_dicommutator,
                            args.force, args.strict_dialgebra)
    except fn.HypothesisError as e:
        return report_body("derive", [(",".join(args.inputs), e.report)], ws.field)
    return report_body("derive", [("derived", certification(obj))], ws.field, derived_document(obj))


def _operator_rep(ws: Workspace, args, default_kind: str) -> RepBundle:
    if args.rep:
        return ws.representation(args.rep)
    if args.algebra:
        a = ws.algebra(args.algebra)
        kind = default_kind
        if a.claimed_class == "anti_assoc":
            kind = default_kind.replace("mlie", "anti_assoc")
        return fn.adjoint(a, kind)
    raise UsageError(f"--kind {args.kind} needs --rep or --algebra")


def run_operator(ws: Workspace, args) -> dict:
    K = ws.map(args.map)
    kind = args.kind
    rep = None
    if kind in ("averaging", "nijenhuis"):
        if not args.algebra:
            raise UsageError(f"--kind {kind} needs --algebra")
        a = ws.algebra(args.algebra)
        report = op.is_averaging(K, a) if kind == "averaging" else op.is_nijenhuis(K, a)
    elif kind in ("embedding", "graph"):
        rep = _operator_rep(ws, args, "mlie_rep")
        report = op.is_embedding_tensor(K, rep) if kind == "embedding" else op.graph_subalgebra_check(K, rep)
    elif kind in ("homomorphic", "crossed-module"):
        rep = _operator_rep(ws, args, "mlie_action")
        if kind == "homomorphic":
            report = op.is_homomorphic_embedding_tensor(K, rep)
        else:
            report = op.is_crossed_module(rep.algebra, rep, K)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown operator kind {kind!r}")
    reports = [(args.map, report)]
    derived = None
    if args.induce:
        if not report.passed and not args.force:
            return report_body("operator", reports, ws.field)
        if rep is None:
            rep = _operator_rep(ws, args, "mlie_action" if args.induce.endswith("trialgebra") else "mlie_rep")
        obj = {
            "bracket": op.induced_bracket,
            "rep": op.induced_rep_piLR,
            "dialgebra": op.induced_dialgebra,
            "trialgebra": op.induced_trialgebra,
            "antiassoc-trialgebra": op.induced_antiassoc_trialgebra,
        }[args.induce](K, rep, force=args.force)
        reports.append(("derived", certification(obj)))
        derived = derived_document(obj)
    return report_body("operator", reports, ws.field, derived)


def run_classify(args) -> dict:
    if args.dim == 1:
        f = FieldSpec(args.prime) if args.prime else FieldSpec()
        result = cl.classify_dim1(f, args.allow_small_characteristic).to_dict()
        ok = result["solutions"] == ["0"]
    else:
        result = cl.classify_dim2(args.prime or 5, allow_small_characteristic=args.allow_small_characteristic,
                                  workers=args.workers).to_dict()
        ok = not result["quotient_failures"] and result["orbit_size_total"] == result["count"]
    return {"command": "classify", "status": "pass" if ok else "fail", "reports": [], "derived": result}


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antileibniz", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, workspace=True):
        if workspace:
            p.add_argument("--workspace", "-w", required=True, type=Path, help="JSON workspace document")
        p.add_argument("--out", type=Path, help="also write the report here")

    p = sub.add_parser("check", help="check an algebra law or representation axioms")
    common(p)
    p.add_argument("--algebra")
    p.add_argument("--rep")
    p.add_argument("--law", type=_law_id)
    p.add_argument("--strict-dialgebra", action="store_true")

    p = sub.add_parser("derive", help="apply a construction")
    common(p)
    p.add_argument("--functor", required=True, choices=[
        "anticommutator", "dicommutator", "collapse", "semidirect", "hemisemidirect",
        "hemisemidirect-trialgebra", "dual-rep", "coadjoint", "kernel-quotient"])
    p.add_argument("--in", dest="inputs", nargs="+", required=True)
    p.add_argument("--swap-dicommutator", action="store_true")
    p.add_argument("--strict-dialgebra", action="store_true")
    p.add_argument("--force", action="store_true")

    p = sub.add_parser("operator", help="check an operator and induce structures")
    common(p)
    p.add_argument("--kind", required=True, choices=[
        "embedding", "averaging", "homomorphic", "nijenhuis", "graph", "crossed-module"])
    p.add_argument("--map", required=True)
    p.add_argument("--rep")
    p.add_argument("--algebra")
    p.add_argument("--induce", choices=["bracket", "rep", "dialgebra", "trialgebra", "antiassoc-trialgebra"])
    p.add_argument("--force", action="store_true")

    p = sub.add_parser("classify", help="classify anti-Leibniz algebras of dimension 1 or 2")
    common(p, workspace=False)
    p.add_argument("--dim", type=int, choices=[1, 2], required=True)
    p.add_argument("--prime", type=int)
    p.add_argument("--allow-small-characteristic", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[dict, int]:
    """Parse arguments and execute; returns the report and the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        if e.code == 0:
            raise
        return error_body("usage", "invalid arguments"), EXIT_ERROR
    start = time.perf_counter()
    try:
        if args.command == "classify":
            body = run_classify(args)
        else:
            ws = parse_workspace(args.workspace)
            body = {"check": run_check, "derive": run_derive, "operator": run_operator}[args.command](ws, args)
    except (WorkspaceError, FieldError, DimensionError, UsageError, KeyError, ValueError, OSError) as e:
        body = error_body(args.command, str(e))
    body["metadata"] = {"tool_version": __version__,
                        "timing_seconds": round(time.perf_counter() - start, 6)}
    code = {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(body["status"], EXIT_ERROR)
    if getattr(args, "out", None):
        try:
            args.out.write_text(dumps(body), encoding="utf-8")
        except OSError as e:
            body = error_body(args.command, str(e))
            code = EXIT_ERROR
    return body, code


def main(argv: Sequence[str] | None = None) -> int:
    body, code = run(argv)
    sys.stdout.write(dumps(body))
    if code == EXIT_ERROR and body.get("error"):
        print(f"error: {body['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
