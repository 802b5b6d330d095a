"""Command line interface: ``arithatiyah run | catalog | verify-suite``.

Exit codes: 0 when every predicate passes, 1 on a predicate failure, 2 on
unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .errors import ArithAtiyahError, ParseError
from .runner import InputError, Options, dumps_report, load_scenario, run_scenario
from .suite import MANIFEST, RUNTIME_LIMITS, verify_suite

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _options(args) -> Options:
    return Options(
        tol_structural=args.tol_structural,
        tol_quadrature=args.tol_quadrature,
        seed=args.seed,
        nmax_torsion=args.nmax_torsion,
    )


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--tol-structural", type=float, default=1e-10, help="cocycle/gluing/identity tolerance")
    p.add_argument("--tol-quadrature", type=float, default=1e-6, help="degree quadrature tolerance")
    p.add_argument("--seed", type=int, default=None, help="grid seed (default: the scenario's)")
    p.add_argument("--nmax-torsion", type=int, default=10_000, help="largest torsion order searched")
    p.add_argument("--json", action="store_true", help="print the report as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arithatiyah", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a scenario file or catalog entry")
    run.add_argument("scenario", help="path to a JSON/TOML scenario, or catalog:<name>")
    _add_common(run)
    cat = sub.add_parser("catalog", help="list or emit built-in scenarios")
    cat.add_argument("action", choices=["list", "emit"])
    cat.add_argument("name", nargs="?")
    suite = sub.add_parser("verify-suite", help="run the acceptance matrix")
    _add_common(suite)
    return parser


def _summary(report: dict, indent: str = "") -> list:
    lines = [f"{indent}{report['scenario'] or report['kind']}: {'PASS' if report['passed'] else 'FAIL'}"]
    for part in report.get("parts", []):
        lines.extend(_summary(part, indent + "  "))
    for name, entry in report.get("predicates", {}).items():
        extra = ""
        if "error" in entry:
            extra = f"  ({entry['error']}: {entry['message']})"
        elif "chern_number" in entry:
            extra = f"  degree {entry['chern_number']:.9f}"
        elif "torsion_order" in entry:
            extra = f"  order {entry['torsion_order']}"
        lines.append(f"{indent}  [{'pass' if entry['passed'] else 'FAIL'}] {name}{extra}")
    return lines


def cmd_run(args) -> int:
    if args.scenario.startswith("catalog:"):
        doc = catalog.emit(args.scenario.split(":", 1)[1])
    else:
        doc = load_scenario(args.scenario)
    report = run_scenario(doc, _options(args))
    print(dumps_report(report) if args.json else "\n".join(_summary(report)))
    return EXIT_PASS if report["passed"] else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog.names():
            print(name)
        return EXIT_PASS
    if not args.name:
        raise InputError("catalog emit needs a name")
    print(json.dumps(catalog.emit(args.name), indent=2, sort_keys=True))
    return EXIT_PASS


def cmd_suite(args) -> int:
    opts = _options(args)
    if opts.seed is None:
        opts = Options(opts.tol_structural, opts.tol_quadrature, 0, opts.nmax_torsion)
    timings: dict = {}
    doc = verify_suite(opts, timings)
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for c in doc["criteria"]:
            limit = RUNTIME_LIMITS.get(c["id"])
            t = timings.get(c["id"], 0.0)
            note = f" (limit {limit:g}s)" if limit else ""
            print(f"{c['id']:>2} {'PASS' if c['passed'] else 'FAIL'}  {MANIFEST[c['id']]}  [{t:.2f}s{note}]")
    return EXIT_PASS if doc["passed"] else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"run": cmd_run, "catalog": cmd_catalog, "verify-suite": cmd_suite}[args.command]
    try:
        return handler(args)
    except (ParseError, InputError, OSError, KeyError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except ArithAtiyahError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
