"""Command-line entry point ``mgt``.

Exit codes: 0 all checks pass, 1 usage or parse error, 2 the subgroups do
not give an exact factorization, 3 at least one verification check failed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import MGTError, SizeLimitError, SpecParseError
from .report import DEFAULT_CAP, dumps
from .survey import exit_code, run_survey, run_verify_pair, run_verify_triple

EXIT_USAGE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mgt", description="Matched pairs and triples of finite groups, verified exhaustively.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--json", metavar="PATH", help="write the machine-readable report here ('-' for stdout)")
        p.add_argument("--canonical", action="store_true", help="omit timing fields from the JSON output")
        p.add_argument("--max-counterexamples", type=int, default=DEFAULT_CAP, metavar="K",
                       help="witnesses kept per check (default %(default)s)")
        p.add_argument("--quiet", action="store_true", help="print summary lines only")

    p = sub.add_parser("verify-pair", help="verify one exact factorization G = MN")
    p.add_argument("--group", required=True, help="group spec, e.g. symmetric:3")
    p.add_argument("--m", required=True, help="generators of M in cycle notation")
    p.add_argument("--n", required=True, help="generators of N in cycle notation")
    common(p)

    p = sub.add_parser("verify-triple", help="verify one exact factorization G = MNP")
    p.add_argument("--group", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--p", required=True, help="generators of P ('' for the trivial subgroup)")
    p.add_argument("--mode", choices=("strict", "relaxed"), default="strict")
    common(p)

    p = sub.add_parser("survey", help="verify every exact pair of every catalog group")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--triples", action="store_true", help="also enumerate and verify exact triples")
    p.add_argument("--include-degenerate", action="store_true", help="keep factorizations with a trivial factor")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default %(default)s)")
    common(p)
    return parser


def _emit(reports, args, single: bool) -> None:
    for r in reports:
        print(r.summary_line() if args.quiet or not single else r.render_text())
    if not single:
        failed = sum(not r.passed for r in reports)
        print(f"{len(reports)} reports, {failed} with failures")
    if args.json:
        text = dumps(reports[0] if single else reports, timing=not args.canonical)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text, encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "verify-pair":
            reports = [run_verify_pair(args.group, args.m, args.n, args.max_counterexamples)]
        elif args.command == "verify-triple":
            reports = [run_verify_triple(args.group, args.m, args.n, args.p, args.mode, args.max_counterexamples)]
        else:
            reports = run_survey(args.max_order, args.triples, args.include_degenerate,
                                 args.max_counterexamples, args.jobs)
    except (SpecParseError, SizeLimitError, ValueError) as exc:
        print(f"mgt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MGTError as exc:
        print(f"mgt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(reports, args, single=args.command != "survey")
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
