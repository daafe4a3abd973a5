"""Command-line driver: ``invhilb --suite NAME`` runs a suite and prints a JSON report."""
from __future__ import annotations

import argparse
import json
import sys

from .checks import REGISTRY, SUITES, explain, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="invhilb", description="Run exact verification suites.")
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    p.add_argument("--seed", type=_unsigned, default=0)
    p.add_argument("--truncation", type=_truncation, default=8, help="degree bound N")
    p.add_argument("--samples", type=_positive, default=50, help="base sample count per property")
    p.add_argument("--out", default="-", help="report path (default stdout)")
    p.add_argument("--explain", metavar="CHECK_ID", help="describe one check and exit")
    p.add_argument("--list", action="store_true", help="list check ids and exit")
    return p


def _unsigned(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _truncation(text: str) -> int:
    from .sl2 import TRUNCATION_CAP
    v = int(text)
    if not 2 <= v <= TRUNCATION_CAP:
        raise argparse.ArgumentTypeError(f"must lie in 2..{TRUNCATION_CAP}")
    return v


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS

    if args.list:
        for cid in sorted(REGISTRY):
            print(f"{cid}\t{REGISTRY[cid].suite}")
        return EXIT_PASS
    if args.explain is not None:
        if args.explain not in REGISTRY:
            parser.print_usage(sys.stderr)
            print(f"invhilb: error: unknown check id {args.explain!r}", file=sys.stderr)
            return EXIT_USAGE
        sys.stdout.write(explain(args.explain))
        return EXIT_PASS

    out = None
    if args.out != "-":
        try:
            out = open(args.out, "w", encoding="utf-8")
        except OSError as exc:
            print(f"invhilb: error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_USAGE

    report = run_suite(args.suite, args.seed, args.truncation, args.samples)
    text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with out:
            out.write(text)
    s = report["summary"]
    print(f"{s['passed']}/{s['total']} checks passed", file=sys.stderr)
    return EXIT_PASS if s["failed"] == 0 else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
