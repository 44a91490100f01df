"""Command-line entry point: ``probesynth run FILE`` and ``probesynth suite [DIR]``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .corpus import SMOKE
from .harness import DEFAULT_TIMEOUT, MODES, eval_holdout, run_benchmark, run_suite, write_records
from .learner import SelectionScheme
from .sygus import load_examples, parse_program, parse_sygus_file

SCHEMES = [s.value for s in SelectionScheme]


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, help="seconds per benchmark")
    p.add_argument("--max-candidates", type=int, default=None,
                   help="stop after this many distinct programs")
    p.add_argument("--seed", type=int, default=0, help="seed for the sampled verifier")
    p.add_argument("--lim-factor", type=int, default=6,
                   help="levels per synthesis cycle, in units of the largest rule cost")
    p.add_argument("--out", help="write records to this file")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--verbose", "-v", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="probesynth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="solve one .sl file")
    run.add_argument("file")
    run.add_argument("--mode", choices=MODES, default="probe")
    run.add_argument("--select", choices=SCHEMES, default="first-cheapest")
    run.add_argument("--holdout", help="file of (constraint (= (f ...) ...)) examples")
    _common(run)

    suite = sub.add_parser("suite", help="solve every .sl file under a directory")
    suite.add_argument("directory", nargs="?", default=str(SMOKE),
                       help="defaults to the bundled smoke suite")
    suite.add_argument("--mode", choices=MODES, action="append",
                       help="repeatable; defaults to all modes")
    suite.add_argument("--select", choices=SCHEMES, action="append",
                       help="repeatable; defaults to first-cheapest")
    suite.add_argument("--workers", type=int, default=1)
    _common(suite)
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    record = run_benchmark(args.file, args.mode, SelectionScheme(args.select), args.timeout,
                           args.seed, args.max_candidates, args.lim_factor)
    if record.error:
        print(f"error: {record.error}", file=sys.stderr)
        return 1
    row = record.row()
    if args.holdout and record.solved:
        problem = parse_sygus_file(args.file)
        with open(args.holdout, encoding="utf-8") as fh:
            examples = load_examples(fh.read(), problem)
        program = parse_program(record.solution, problem.grammar)
        row["holdout_accuracy"] = eval_holdout(program, examples)
    if args.out:
        write_records([record], args.out, args.format)
    print(json.dumps(row, indent=2))
    return 0


def _cmd_suite(args: argparse.Namespace) -> int:
    modes = args.mode or list(MODES)
    schemes = [SelectionScheme(s) for s in (args.select or ["first-cheapest"])]
    report = run_suite(args.directory, modes, schemes, args.timeout, args.out, args.format,
                       seed=args.seed, max_candidates=args.max_candidates,
                       lim_factor=args.lim_factor, workers=args.workers)
    for r in report.records:
        status = r.solution if r.solved else (r.error or "unsolved")
        print(f"{r.benchmark}\t{r.mode}\t{r.scheme}\t{r.wall_time_s:.2f}s\t{status}")
    print(report.summary())
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_suite(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
