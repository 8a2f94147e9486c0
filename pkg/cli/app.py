"""
Command line front-end

    check [--input PATH|-] [--fixtures] [--cap N] [--methods t1,t1d,t2,t3]
          [--trials T] [--seed S] [--jobs J] [--format jsonl|csv] [--fail-fast]
    gen   --n N --delta D --count C [--seed S]
    bound --delta D

The report goes to stdout (or --output); logs go to stderr.
Exit codes: 0 clean, 1 usage or I/O error, 2 counterexample among regular
inputs, 3 certificate violation.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from config.default_config import load_config
from engine.core import RunConfig, joos_threshold, run_check, run_gen
from engine.errors import DomcheckError
from engine.report import EXIT_OK, EXIT_USAGE, fraction_str
from engine.schemes import theorem1_bound

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(name)s] %(levelname)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="domcheck", description="Domination vs. edge domination conjecture checker")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    parser.add_argument("--config", type=Path, default=None, help="user config JSON (defaults to config/user_config.json)")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="verify the conjecture and all certificates on a corpus")
    check.add_argument("--input", "-i", default=None, help="graph6 file, or - for stdin")
    check.add_argument("--fixtures", action="store_true", help="include the named fixture graphs")
    check.add_argument("--cap", type=int, default=None, help="refuse graphs with more vertices")
    check.add_argument("--methods", default=None, help="comma list of t1,t1d,t2,t3")
    check.add_argument("--trials", type=int, default=None, help="Monte Carlo trials for t1")
    check.add_argument("--seed", type=int, default=None)
    check.add_argument("--jobs", "-j", type=int, default=None, help="worker processes")
    check.add_argument("--format", choices=["jsonl", "csv"], default=None)
    check.add_argument("--fail-fast", action="store_true", default=None)
    check.add_argument("--output", "-o", type=Path, default=None, help="report file (default stdout)")

    gen = sub.add_parser("gen", help="random regular graphs in graph6")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--delta", type=int, required=True)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--output", "-o", type=Path, default=None)

    bound = sub.add_parser("bound", help="Theorem 1 factor and the large-degree threshold for one degree")
    bound.add_argument("--delta", type=int, required=True)
    return parser


def _cmd_check(args, config: dict) -> int:
    run_config = RunConfig.from_config(
        config,
        input=args.input,
        fixtures=args.fixtures or None,
        cap=args.cap,
        methods=args.methods,
        trials=args.trials,
        seed=args.seed,
        jobs=args.jobs,
        format=args.format,
        fail_fast=args.fail_fast,
    )
    if args.output is None:
        return run_check(run_config, sys.stdout).exit_code
    with args.output.open("w", encoding="utf-8", newline="") as out:
        return run_check(run_config, out).exit_code


def _cmd_gen(args, config: dict) -> int:
    retry_limit = config.get("generator", {}).get("retry_limit", 10_000)
    records = run_gen(args.n, args.delta, args.count, args.seed, retry_limit)
    if args.output is None:
        out = sys.stdout.buffer
        for record in records:
            out.write(record + b"\n")
        out.flush()
    else:
        with args.output.open("wb") as out:
            for record in records:
                out.write(record + b"\n")
    return EXIT_OK


def _cmd_bound(args, config: dict) -> int:
    if args.delta < 1:
        raise DomcheckError("--delta must be at least 1")
    factor = theorem1_bound(args.delta)
    verdict = joos_threshold(args.delta)
    print(f"delta={args.delta}")
    print(f"theorem1_bound={fraction_str(factor)} ({float(factor):.6f})")
    print(f"threshold_holds={str(verdict.holds).lower()}")
    print(f"threshold_lhs={verdict.lhs}")
    print(f"threshold_rhs={verdict.rhs}")
    return EXIT_OK


COMMANDS = {"check": _cmd_check, "gen": _cmd_gen, "bound": _cmd_bound}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    config = load_config(args.config)
    try:
        return COMMANDS[args.command](args, config)
    except (DomcheckError, OSError, ValueError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
