"""Command-line front end.

    racahweyl eval "comm(K1,K2)" -n 6
    racahweyl comm "Jp(1)" "Jm(1)" -n 1
    racahweyl verify --suite racah-o6 --format json
    racahweyl list

Exit status: 0 on success, 1 when a check or oracle comparison fails, 2 on
usage, parse or evaluation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import realizations as R
from .lang import ParseError, SessionConfig, build_op, parse_expr
from .oracle import oracle_compare
from .expr import Atom
from .verify import CHECKS, DIAGNOSTIC_SUITES, SUITES, run_suite, suite_names

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _session(args) -> SessionConfig:
    params = tuple(p.strip() for p in args.params.split(",") if p.strip()) if args.params else ()
    return SessionConfig(n=args.n, params=params, fmt=args.format)


def _emit_element(text: str, cfg: SessionConfig, args, out) -> int:
    try:
        node = parse_expr(text, cfg)
        op = build_op(node, cfg)
        value = op.element
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status = EXIT_OK
    oracle = None
    if args.oracle:
        outcome = oracle_compare(op, Atom(value))
        oracle = {"agree": outcome.equal, "grid_points": outcome.points}
        if not outcome.equal:
            status = EXIT_FAILED
    if cfg.fmt == "json":
        params = list(cfg.params) or sorted(value.symbols())
        payload = {"n": cfg.n, "params": params, "terms": value.to_records(params)}
        if oracle is not None:
            payload["oracle"] = oracle
        print(json.dumps(payload, indent=2), file=out)
    else:
        print(value.render(), file=out)
        if oracle is not None:
            verdict = "agrees" if oracle["agree"] else "DISAGREES"
            print(f"# oracle {verdict} on {oracle['grid_points']} grid points", file=out)
    return status


def cmd_eval(args, out=None) -> int:
    out = out or sys.stdout
    return _emit_element(args.expr, _session(args), args, out)


def cmd_comm(args, out=None) -> int:
    out = out or sys.stdout
    return _emit_element(f"comm({args.left}, {args.right})", _session(args), args, out)


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    if args.suite not in suite_names():
        print(f"error: unknown suite {args.suite!r}; available suites: {', '.join(suite_names())}",
              file=sys.stderr)
        return EXIT_USAGE
    report = run_suite(args.suite, oracle=args.oracle, jobs=args.jobs)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2), file=out)
    else:
        print(report.render_text(), file=out)
    return EXIT_OK if report.all_passed else EXIT_FAILED


def cmd_list(args, out=None) -> int:
    out = out or sys.stdout
    if args.format == "json":
        payload = {
            "operators": {name: {"args": list(e.args), "doc": e.doc, "dims": list(e.dims), "params": list(e.params)}
                          for name, e in R.REGISTRY.items()},
            "suites": {s: len(names) for s, names in SUITES.items()},
        }
        print(json.dumps(payload, indent=2), file=out)
        return EXIT_OK
    print("generators: x1..xn, d1..dn (negative powers of x allowed: x1^-2)", file=out)
    print("operators:", file=out)
    for name, e in R.REGISTRY.items():
        sig = f"{name}({', '.join(e.args)})" if e.args else name
        extra = []
        if e.dims:
            extra.append(f"n={'/'.join(map(str, e.dims))}")
        if e.params:
            extra.append(f"params {','.join(e.params)}")
        print(f"  {sig:<24} {e.doc}" + (f"  [{'; '.join(extra)}]" if extra else ""), file=out)
    print("suites:", file=out)
    for s, names in SUITES.items():
        tag = "  (diagnostic, not in 'all')" if s in DIAGNOSTIC_SUITES else ""
        print(f"  {s:<16} {len(names)} checks{tag}", file=out)
    print(f"  {'all':<16} every non-diagnostic suite", file=out)
    if args.checks:
        for name in CHECKS:
            print(f"  {name}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, default=6, help="number of variables (default 6)")
    common.add_argument("--params", default="", help="comma-separated parameter symbols, e.g. a1,a2,a3")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="racahweyl", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression to normal form")
    p.add_argument("expr")
    p.add_argument("--oracle", action="store_true", help="re-check the result with the monomial-action oracle")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("comm", parents=[common], help="normal form of [A, B]")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_comm)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--oracle", action="store_true", help="decide every check with the oracle instead")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("list", parents=[common], help="list operators and suites")
    p.add_argument("--checks", action="store_true", help="also list every check name")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:  # bad session configuration
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
