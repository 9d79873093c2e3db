"""Command-line entry point.

Exit codes: 0 success, 1 validation or feasibility failure, 2 usage error,
3 I/O error. Results go to stdout, diagnostics to stderr. The home directory
(scope documents plus snapshot store) defaults to ``$RATQUAL_HOME`` or
``~/.ratqual``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ratqual import __version__
from ratqual.catalog import catalog_dump, list_characteristics, maturity_models_for
from ratqual.errors import RatQualError, ValidationError
from ratqual.monitoring import ASPECTS
from ratqual.planner import load_cost_model
from ratqual.scope import (
    CollaborationScope,
    dumps_canonical,
    load_scope,
    loads_document,
    parse_scope,
    parse_utc,
    template_document,
    validate_scope,
)
from ratqual.workspace import (
    Workspace,
    perform_assess,
    perform_plan,
    perform_timeline,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3


def default_home() -> str:
    return os.environ.get("RATQUAL_HOME", str(Path.home() / ".ratqual"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratqual",
        description="Assess, plan, and monitor external information-system quality ratios.",
    )
    parser.add_argument("--version", action="version", version=f"ratqual {__version__}")
    parser.add_argument(
        "--home",
        default=None,
        help="workspace directory (default: $RATQUAL_HOME or ~/.ratqual)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init-scope", help="write a starter scope document")
    p.add_argument("--scope", required=True, help="scope identifier")
    p.add_argument("--name", default="New collaboration scope")
    p.add_argument("--out", default=None, help="write to this path instead of the workspace")

    p = sub.add_parser("validate", help="validate a scope document")
    p.add_argument("--scope", required=True, help="scope id in the workspace, or a file path")

    p = sub.add_parser("assess", help="compute the quality ratio of one characteristic")
    p.add_argument("--scope", required=True)
    p.add_argument("--characteristic", "-c", required=True)
    p.add_argument("--record", action="store_true", help="append a snapshot to the store")
    p.add_argument("--label", default=None, help="label for the recorded snapshot")
    p.add_argument("--format", choices=("human", "machine"), default="human")

    p = sub.add_parser("plan", help="propose a minimum-cost scenario toward a target ratio")
    p.add_argument("--scope", required=True)
    p.add_argument("--characteristic", "-c", required=True)
    p.add_argument("--target", required=True, type=float)
    p.add_argument("--costs", default=None, help="cost model document path")
    p.add_argument("--format", choices=("human", "machine"), default="human")

    p = sub.add_parser("report", help="trend report for one assessment stream")
    p.add_argument("--scope", required=True)
    p.add_argument("--characteristic", "-c", required=True)
    p.add_argument("--from", dest="since", default=None, help="window start (ISO-8601)")
    p.add_argument("--to", dest="until", default=None, help="window end (ISO-8601)")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of the table")
    p.add_argument("--format", choices=("human", "machine"), default="human")

    p = sub.add_parser("catalog", help="dump the characteristic catalog")
    p.add_argument("--format", choices=("human", "machine"), default="human")

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)

    return parser


def _resolve_scope(workspace: Workspace, token: str) -> CollaborationScope:
    """Accept either a workspace scope id or a document path."""
    candidate = Path(token)
    if token.endswith(".json") or candidate.is_file():
        return load_scope(candidate)
    return workspace.load(token)


def _print_result_table(result: dict) -> None:
    print(f"QP       {result['qp']:.4f}")
    print(f"DC       {result['dc']:.4f}")
    print(f"PO       {result['po']:.4f}")
    print(f"RatQual  {result['ratqual']:.4f}")


def _cmd_init_scope(workspace: Workspace, args: argparse.Namespace) -> int:
    document = template_document(args.scope, args.name)
    if args.out is not None:
        path = Path(args.out)
    else:
        path = workspace.scope_path(args.scope)
        if path.exists():
            raise ValidationError(f"scope {args.scope!r} already exists at {path}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_canonical(document), encoding="utf-8")
    print(f"wrote scope template to {path}")
    return EXIT_OK


def _cmd_validate(workspace: Workspace, args: argparse.Namespace) -> int:
    token = args.scope
    candidate = Path(token)
    if token.endswith(".json") or candidate.is_file():
        path = candidate
    else:
        path = workspace.scope_path(token)
    scope = parse_scope(loads_document(path.read_text(encoding="utf-8"), str(path)))
    report = validate_scope(scope)
    if report.ok:
        print(f"scope {scope.scope_id!r} is valid")
        return EXIT_OK
    for line in report.lines():
        print(line, file=sys.stderr)
    return EXIT_FAILURE


def _cmd_assess(workspace: Workspace, args: argparse.Namespace) -> int:
    scope = _resolve_scope(workspace, args.scope)
    payload = perform_assess(
        workspace,
        scope,
        args.characteristic,
        record=args.record,
        label=args.label,
    )
    if args.format == "machine":
        print(json.dumps(payload))
    else:
        _print_result_table(payload["result"])
        if payload["recorded"]:
            print(f"recorded snapshot at {payload['snapshot']['taken_at']}", file=sys.stderr)
    return EXIT_OK


def _cmd_plan(workspace: Workspace, args: argparse.Namespace) -> int:
    scope = _resolve_scope(workspace, args.scope)
    costs = load_cost_model(args.costs) if args.costs else None
    payload = perform_plan(
        workspace, scope, args.characteristic, target=args.target, costs=costs
    )
    if args.format == "machine":
        print(json.dumps(payload))
        return EXIT_OK
    baseline = payload["baseline"]["ratqual"]
    projected = payload["projected"]["ratqual"]
    if not payload["actions"]:
        print(
            f"target {args.target:.4f} already satisfied at ratio {baseline:.4f}; "
            "empty scenario"
        )
        return EXIT_OK
    print(f"scenario toward target {args.target:.4f} (as-is ratio {baseline:.4f}):")
    for line in payload["explanation"]:
        print(f"  - {line}")
    print(f"total cost: {payload['total_cost']:g}")
    print(f"projected ratio: {projected:.4f}")
    return EXIT_OK


def _cmd_report(workspace: Workspace, args: argparse.Namespace) -> int:
    since = parse_utc(args.since, "from") if args.since else None
    until = parse_utc(args.until, "to") if args.until else None
    report_doc, csv_text = perform_timeline(
        workspace, args.scope, args.characteristic, since, until
    )
    if args.csv:
        sys.stdout.write(csv_text)
        return EXIT_OK
    if args.format == "machine":
        print(json.dumps(report_doc))
        return EXIT_OK
    if not report_doc["series"]:
        print("no snapshots in window")
        return EXIT_OK
    print("taken_at                     qp      dc      po      ratqual")
    for point in report_doc["series"]:
        print(
            f"{point['taken_at']:<28} {point['qp']:.4f}  {point['dc']:.4f}  "
            f"{point['po']:.4f}  {point['ratqual']:.4f}"
        )
    deltas = report_doc["deltas"]
    print(
        "deltas: "
        + "  ".join(f"{aspect} {deltas[aspect]:+.4f}" for aspect in ASPECTS)
    )
    for flag in report_doc["flags"]:
        print(
            f"regression: {flag['aspect']} fell by {-flag['delta']:.4f} "
            f"at {flag['taken_at']}",
            file=sys.stderr,
        )
    return EXIT_OK


def _cmd_catalog(workspace: Workspace, args: argparse.Namespace) -> int:
    if args.format == "machine":
        print(json.dumps(catalog_dump()))
        return EXIT_OK
    for characteristic, category in list_characteristics():
        models = ", ".join(m.short_name for m in maturity_models_for(characteristic))
        print(f"{characteristic.value:<24} {category.value:<14} {models}")
    return EXIT_OK


def _cmd_serve(workspace: Workspace, args: argparse.Namespace) -> int:
    import uvicorn

    from ratqual.api import create_app

    app = create_app(workspace)
    print(f"serving on http://{args.host}:{args.port}{'' if args.host else ''}", file=sys.stderr)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


_COMMANDS = {
    "init-scope": _cmd_init_scope,
    "validate": _cmd_validate,
    "assess": _cmd_assess,
    "plan": _cmd_plan,
    "report": _cmd_report,
    "catalog": _cmd_catalog,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    workspace = Workspace(args.home or default_home())
    handler = _COMMANDS[args.command]
    try:
        return handler(workspace, args)
    except RatQualError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for detail in getattr(exc, "details", []) or []:
            print(f"  {detail}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
