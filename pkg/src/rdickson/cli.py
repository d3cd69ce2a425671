"""Command-line frontend: eval, table, analyze, verify."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import suites
from .dickson import RdpSpec, eval_explicit, eval_functional, eval_recurrence, value_table
from .permcheck import PermMap, analyze, rdp_map
from .ring import InvalidModulus, ResidueRing, UnsupportedRing

SCHEMA_VERSION = "1"
ROUTES = {
    "recurrence": eval_recurrence,
    "explicit": eval_explicit,
    "functional": eval_functional,
}


@dataclass
class ReportEnvelope:
    command: str
    parameters: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "schema_version": self.schema_version,
        }
        return json.dumps(payload, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> ReportEnvelope:
        return cls(**json.loads(text))


def parse_kind(text: str) -> int:
    t = text.strip().upper()
    if t == "D":
        return 0
    if t == "E":
        return 1
    try:
        k = int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"kind must be D, E or a non-negative integer, got {text!r}")
    if k < 0:
        raise argparse.ArgumentTypeError("kind must be non-negative")
    return k


def parse_range(text: str) -> tuple[int, int]:
    """'0..23' or a single index '7'."""
    try:
        if ".." in text:
            lo, hi = (int(s) for s in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}")
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad index range {text!r}")
    return lo, hi


def parse_modulus(text: str) -> int:
    try:
        return ResidueRing(int(text)).m
    except (ValueError, InvalidModulus) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _non_negative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdickson", description="Reversed Dickson polynomials over Z_m")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_n=True):
        p.add_argument("--kind", type=parse_kind, required=True, help="D, E, or k for the (k+1)-th kind")
        if with_n:
            p.add_argument("--n", type=_non_negative, required=True)
        p.add_argument("--a", type=int, default=1)
        p.add_argument("--mod", type=parse_modulus, required=True, dest="modulus")

    p = sub.add_parser("eval", help="evaluate D_{n,k}(a, x) mod m")
    common(p)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--x", type=int)
    where.add_argument("--all-x", action="store_true")
    p.add_argument("--route", choices=sorted(ROUTES), default="recurrence")

    p = sub.add_parser("table", help="CSV grid of values, x down and n across")
    common(p, with_n=False)
    p.add_argument("--n", type=parse_range, required=True, help="index range LO..HI")
    p.add_argument("--x", type=int, action="append", help="restrict to these x (repeatable)")

    p = sub.add_parser("analyze", help="permutation analysis as JSON")
    common(p)
    p.add_argument("--cpp", action="store_true")
    p.add_argument("--fixed-points", action="store_true")
    p.add_argument("--cycle-type", action="store_true")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(suites.SUITES) + ["all"], required=True)
    p.add_argument("--prime-cap", type=int, default=None)
    return parser


def cmd_eval(args) -> int:
    spec = RdpSpec(args.n, args.kind, args.a, args.modulus)
    fn = ROUTES[args.route]
    xs = range(args.modulus) if args.all_x else [args.x % args.modulus]
    if args.all_x and args.route == "recurrence":
        values = value_table(args.kind, args.a, args.modulus, args.n)[args.n].tolist()
    else:
        values = [fn(spec, x) for x in xs]
    print(",".join(map(str, values)))
    return 0


def cmd_table(args) -> int:
    lo, hi = args.n
    sys.stdout.write(suites.render_table_csv(args.kind, args.modulus, lo, hi, args.x, args.a))
    return 0


def analysis_results(pm: PermMap, cpp: bool, want_fixed: bool, want_cycles: bool) -> dict:
    rep = analyze(pm, cpp=cpp).to_dict()
    if not want_fixed:
        del rep["fixed_points"]
    if not want_cycles:
        del rep["cycle_type"]
    if not cpp:
        del rep["is_cpp"]
    return rep


def cmd_analyze(args) -> int:
    pm = rdp_map(args.n, args.kind, args.a, args.modulus)
    env = ReportEnvelope(
        "analyze",
        {"kind": args.kind, "n": args.n, "a": args.a % args.modulus, "modulus": args.modulus,
         "cpp": args.cpp, "fixed_points": args.fixed_points, "cycle_type": args.cycle_type},
        analysis_results(pm, args.cpp, args.fixed_points, args.cycle_type),
    )
    print(env.to_json())
    return 0


def cmd_verify(args) -> int:
    reports = suites.run_suite(args.suite, args.prime_cap)
    passed = all(r.passed for r in reports)
    env = ReportEnvelope(
        "verify",
        {"suite": args.suite, "prime_cap": args.prime_cap},
        {"passed": passed, "suites": [r.to_dict() for r in reports]},
    )
    print(env.to_json())
    for r in reports:
        for c in r.failures():
            print(f"FAILED {r.suite}: {c.name} ({c.detail})", file=sys.stderr)
    return 0 if passed else 1


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "analyze": cmd_analyze, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UnsupportedRing, InvalidModulus) as exc:
        parser.print_usage(sys.stderr)
        print(f"rdickson {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
