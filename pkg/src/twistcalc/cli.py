"""Command line front door.

Subcommands
-----------

``verify``      run registered verification suites (or an ad-hoc fixture
                file) and emit a JSON report; exit 1 on any failing check.
``star``        evaluate one expression in the shared grammar (``*`` is the
                deformed product) and print its canonical normal form.
``act``         apply a symmetry generator to an expression and print the
                canonical normal form of the result.
``twist-info``  print the twist data and its axiom report as JSON.
``geometry``    emit one of the golden geometry tables (gstar / nabla /
                ricci) diffed against the recorded values; exit 1 on any
                mismatch.

The truncation order defaults to 6; the ``TWISTCALC_ORDER`` environment
variable overrides it (taking precedence over ``--order``, so batch runs
can be redirected without editing scripts).  ``--params`` pins the shape
constants, e.g. ``--params a=1,b=1``; omitted parameters stay symbolic.
Exit codes: 0 all checks pass, 1 verification failure, 2 usage or
configuration error.
"""

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from .errors import ConfigurationError, TwistcalcError
from .expressions import render_element
from .verify import (AGGREGATE_SUITES, HyperboloidSession, available_suites,
                     run_fixture_records, verify_relation_suite)

__all__ = ["main", "build_parser"]


# ---------------------------------------------------------------------------
# configuration plumbing
# ---------------------------------------------------------------------------

def _parse_params(text: Optional[str]) -> dict:
    """Parse ``a=1,b=1,c=5/2`` into {"a": Fraction|None, "b": ..., "c": ...}."""
    params = {"a": None, "b": None, "c": None}
    if not text:
        return params
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ConfigurationError(
                f"malformed parameter {item!r}; expected key=value")
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in params:
            raise ConfigurationError(
                f"unknown parameter {key!r}; expected a, b or c")
        try:
            params[key] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigurationError(f"bad value for {key}: {exc}")
    return params


def _resolve_order(args) -> int:
    env = os.environ.get("TWISTCALC_ORDER")
    if env is not None:
        try:
            order = int(env)
        except ValueError:
            raise ConfigurationError(
                f"TWISTCALC_ORDER must be an integer, got {env!r}")
    else:
        order = args.order
    if order < 2:
        raise ConfigurationError("truncation order must be at least 2")
    return order


def _build_session(args, *, default_unit_shape: bool = False) -> HyperboloidSession:
    params = _parse_params(args.params)
    if default_unit_shape and args.params is None:
        params["a"] = params["b"] = Fraction(1)
    order = _resolve_order(args)
    session = HyperboloidSession(order=order, a=params["a"], b=params["b"])
    session.cli_params = params
    return session


def _config_echo(session: HyperboloidSession) -> dict:
    params = getattr(session, "cli_params", {"a": None, "b": None, "c": None})
    return {
        "order": session.order,
        "params": {k: (str(v) if v is not None else "symbolic")
                   for k, v in params.items()},
    }


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _status_checks(report: dict, with_timing: bool) -> List[dict]:
    checks = []
    for c in report["checks"]:
        rec = {"id": c["id"], "status": "pass" if c["passed"] else "fail"}
        for key in ("relation", "lhs_nf", "rhs_nf", "residual"):
            if c.get(key) is not None:
                rec[key] = c[key]
        checks.append(rec)
    return checks


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    session = _build_session(args)
    names: List[str] = []
    for item in args.suite or []:
        names.extend(s for s in item.split(",") if s)
    if any(s == "all" for s in names):
        names = [s for s in names if s != "all"]
        names.extend(s for s in AGGREGATE_SUITES if s not in names)
    reports = []
    for name in names:
        reports.append(verify_relation_suite(name, session))
    if args.fixture_file:
        with open(args.fixture_file) as fh:
            records = json.load(fh)
        reports.append(run_fixture_records(
            session, records, reduce_ideal=args.reduce_ideal,
            suite=os.path.basename(args.fixture_file)))
    failures = sum(1 for r in reports for c in r["checks"] if not c["passed"])
    payload = {
        "config": _config_echo(session),
        "suites": [
            {
                "suite": r["suite"],
                "passed": r["passed"],
                **({"elapsed": round(r["elapsed"], 3)}
                   if not args.no_timing else {}),
                "checks": _status_checks(r, not args.no_timing),
            }
            for r in reports
        ],
        "summary": {
            "checks": sum(len(r["checks"]) for r in reports),
            "failed": failures,
            "passed_all": failures == 0,
        },
    }
    _emit(args, payload)
    return 0 if failures == 0 else 1


def cmd_star(args) -> int:
    session = _build_session(args)
    value = session.star_parser.parse(args.expression)
    print(render_element(value))
    return 0


def cmd_act(args) -> int:
    session = _build_session(args)
    if args.generator not in session.lie.names:
        raise ConfigurationError(
            f"unknown generator {args.generator!r}; choose from"
            f" {', '.join(session.lie.names)}")
    parser = session.star_parser if args.star else session.classical_parser
    value = parser.parse(args.expression)
    result = session.lie.act(session.lie.gen(args.generator), value)
    print(render_element(result))
    return 0


def cmd_twist_info(args) -> int:
    session = _build_session(args)
    twist = session.twist
    payload = {
        "config": _config_echo(session),
        "kind": twist.kind,
        "generators": list(session.lie.names),
        "axioms": twist.axiom_report(),
        "term-counts": {
            "twist": len(twist.tensor.terms),
            "twist-inverse": len(twist.inverse.terms),
            "braiding": len(twist.braiding().terms),
            "gauge-element": len(twist.beta().terms),
        },
    }
    _emit(args, payload)
    return 0 if all(payload["axioms"].values()) else 1


def cmd_geometry(args) -> int:
    session = _build_session(args, default_unit_shape=True)
    params = getattr(session, "cli_params", {})
    level = None
    if params.get("c") is not None:
        level = session.ring.rational(params["c"])
    from .geometry import GeometryContext, MetricSpec
    from .verify import GOLDEN_GSTAR_TABLE, GOLDEN_NABLA_TABLE
    session.require_unit_shape("the golden geometry table")
    metric = MetricSpec.weight_minkowski(session.alg)
    geo = GeometryContext(session.star, session.ideal, metric, level=level)
    if args.object == "gstar":
        table, golden = geo.gstar_table(), GOLDEN_GSTAR_TABLE
    elif args.object == "nabla":
        table, golden = geo.nabla_table(), GOLDEN_NABLA_TABLE
    else:
        table = geo.ricci_table()
        parse = session.classical_parser.parse
        golden = {
            pair: render_element(-parse(text).scale(geo.half_inv_level))
            for pair, text in GOLDEN_GSTAR_TABLE.items()
        }
    entries = []
    failures = 0
    for pair in sorted(table):
        value = render_element(table[pair])
        want = golden[pair]
        match = value == want
        failures += 0 if match else 1
        entries.append({
            "pair": list(pair),
            "value": value,
            "golden": want,
            "status": "pass" if match else "fail",
        })
    payload = {
        "config": _config_echo(session),
        "object": args.object,
        "entries": entries,
        "summary": {"entries": len(entries), "failed": failures},
    }
    _emit(args, payload)
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--order", type=int, default=6,
                        help="series truncation order (default 6;"
                             " TWISTCALC_ORDER takes precedence)")
    parser.add_argument("--params", default=None,
                        help="shape parameters, e.g. a=1,b=1[,c=5/2];"
                             " omitted entries stay symbolic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistcalc",
        description="Exact deformed calculus on quadric surfaces: run"
                    " verification suites, star products, symmetry actions"
                    " and geometry tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run verification suites")
    _add_common(p)
    p.add_argument("--suite", action="append", default=None,
                   help="suite name, comma list, or 'all'; repeatable."
                        f" Registered: {', '.join(available_suites())}")
    p.add_argument("--fixture-file", default=None,
                   help="run an ad-hoc JSON fixture file as its own suite")
    p.add_argument("--reduce-ideal", action="store_true",
                   help="reduce ad-hoc fixture residuals modulo the quadric"
                        " ideal")
    p.add_argument("--output", default=None, help="also write the JSON"
                                                  " report to this path")
    p.add_argument("--no-timing", action="store_true",
                   help="omit elapsed fields for byte-identical reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("star", help="evaluate an expression (* is the"
                                    " deformed product)")
    _add_common(p)
    p.add_argument("expression")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("act", help="apply a symmetry generator to an"
                                   " expression")
    _add_common(p)
    p.add_argument("generator", help="generator name, e.g. H, E+ or E-")
    p.add_argument("expression")
    p.add_argument("--star", action="store_true",
                   help="parse the expression with * as the deformed"
                        " product")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("twist-info", help="print twist data and axiom"
                                          " report")
    _add_common(p)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_twist_info)

    p = sub.add_parser("geometry", help="emit a geometry table diffed"
                                        " against the golden values")
    _add_common(p)
    p.add_argument("--object", choices=("gstar", "nabla", "ricci"),
                   required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_geometry)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TwistcalcError as exc:
        print(f"twistcalc: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"twistcalc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover - exercised via console script
    sys.exit(main())
