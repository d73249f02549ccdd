"""Command line: evaluate rules, generate tournaments, run audits.

Exit codes: 0 success or audit pass, 1 audit fail, 2 usage or parse error,
3 tournament size unsupported by the rule.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from .audit import audit, parse_rational, worst_on_family
from .audit.report import CONSTANT_PROPERTIES, PROPERTIES, format_constant, normalize_property
from .rules import RULES, UnsupportedSizeError, get_rule
from .tournament import FAMILIES, Tournament, TournamentParseError, gen_family

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3

_KEBAB_PROPERTIES = [p.replace("_", "-") for p in PROPERTIES]
_KEBAB_FAMILIES = [f.replace("_", "-") for f in FAMILIES]


def _read_tournament(path: str | None) -> Tournament:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    return Tournament.parse(text)


def cmd_eval(args: argparse.Namespace) -> int:
    rule = get_rule(args.rule)
    t = _read_tournament(args.input)
    rule.check_size(t.n)
    dist = rule(t)
    if args.json:
        payload = {
            "rule": rule.name,
            "n": t.n,
            "probabilities": [
                {"team": i, "num": p.numerator, "den": p.denominator, "float": float(p)}
                for i, p in enumerate(dist)
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        for i, p in enumerate(dist):
            print(f"{i}: {p} ({float(p):.6f})")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    t = gen_family(args.family, args.n, args.seed)
    sys.stdout.write(t.to_text())
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    threshold = None if args.threshold is None else parse_rational(args.threshold)
    if args.n is None:
        raise ValueError("audit needs --n")
    report = audit(args.rule, args.property, args.n, k=args.k, threshold=threshold, jobs=args.jobs)
    print(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_worst(args: argparse.Namespace) -> int:
    prop = normalize_property(args.property)
    if prop not in CONSTANT_PROPERTIES:
        raise ValueError(f"worst needs one of {', '.join(CONSTANT_PROPERTIES)}")
    reports = worst_on_family(args.rule, prop, args.family, args.n or [3], k=args.k)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        print(f"{'n':>4}  {'worst':>24}  float")
        for r in reports:
            value = r.worst_constant
            print(f"{r.n:>4}  {format_constant(value):>24}  {float(value):.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tournament-rules", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    rules = list(RULES)

    p = sub.add_parser("eval", help="winner distribution of a rule on one tournament")
    p.add_argument("--rule", required=True, choices=rules)
    p.add_argument("--in", dest="input", metavar="FILE", help="tournament file (default stdin)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gen", help="print a named tournament in the text format")
    p.add_argument("--family", required=True, choices=_KEBAB_FAMILIES + list(FAMILIES))
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("audit", help="exhaustive audit over all tournaments on n teams")
    p.add_argument("--rule", required=True, choices=rules)
    p.add_argument("--property", required=True, choices=_KEBAB_PROPERTIES)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--threshold", metavar="NUM/DEN")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true", help="accepted for symmetry; audit output is always JSON")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("worst", help="worst constant on a family member and its neighbours")
    p.add_argument("--rule", required=True, choices=rules)
    p.add_argument("--property", required=True, choices=[p.replace("_", "-") for p in CONSTANT_PROPERTIES])
    p.add_argument("--family", required=True, choices=_KEBAB_FAMILIES + list(FAMILIES))
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--k", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_worst)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UnsupportedSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (TournamentParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
