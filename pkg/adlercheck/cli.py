"""Command-line entry point.

Usage:
    adlercheck                                   # quick run of every suite
    adlercheck --suite lattice --format json     # one suite, JSON report
    adlercheck --suite pencil --lambda 0,-2,7 --prime 101,103 --heavy
    adlercheck --config nightly.conf --out report.json

Exit status is 0 when every executed check passes, 1 when any check fails
and 2 for an invalid configuration.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .config import ConfigError, RunOptions, Suite, parse_format, parse_lambdas, parse_primes, parse_suite
from .report import emit
from .suites import run

logger = logging.getLogger("adlercheck")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adlercheck",
        description="Exact verification of the PSL2(F19)-invariant cubic sevenfold",
    )
    parser.add_argument(
        "--suite", "-s",
        type=str,
        default=None,
        help=f"Suite to run: {', '.join(s.value for s in Suite)} (default: all)",
    )
    parser.add_argument(
        "--lambda", "-l",
        dest="lambdas",
        type=str,
        default=None,
        help="Comma-separated pencil parameters, e.g. 0,-2,1/3 (default: 0,-2,1)",
    )
    parser.add_argument(
        "--prime", "-p",
        dest="primes",
        type=str,
        default=None,
        help="Comma-separated primes for smoothness certificates (default: 101)",
    )
    parser.add_argument(
        "--heavy",
        action="store_true",
        default=None,
        help="Also run the slow checks (full homomorphism certificate, R_10 ranks). "
             "Without it the representation is only checked on its generator relations",
    )
    parser.add_argument(
        "--format", "-f",
        type=str,
        default=None,
        help="Report format: human or json (default: human)",
    )
    parser.add_argument(
        "--out", "-o",
        type=str,
        default=None,
        help="Write the report to this file instead of stdout",
    )
    parser.add_argument(
        "--config", "-c",
        type=str,
        default=None,
        help="Read options from a key = value file; flags override it",
    )
    parser.add_argument(
        "--verbose", "-v",
        action="store_true",
        default=None,
        help="Enable verbose logging",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def resolve_options(args: argparse.Namespace) -> RunOptions:
    """Config file first, then every flag that was actually given."""
    base = RunOptions.from_file(Path(args.config)) if args.config else RunOptions()
    return base.merged({
        "suite": parse_suite(args.suite) if args.suite else None,
        "lambdas": parse_lambdas(args.lambdas) if args.lambdas else None,
        "primes": parse_primes(args.primes) if args.primes else None,
        "heavy": args.heavy,
        "format": parse_format(args.format) if args.format else None,
        "out": Path(args.out) if args.out else None,
        "verbose": args.verbose,
    })


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        options = resolve_options(args)
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    # Logs go to stderr; stdout carries the report
    logging.basicConfig(
        level=logging.DEBUG if options.verbose else logging.INFO,
        format="%(asctime)s [%(name)s] %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    logger.info(f"adlercheck {__version__}: suites {[s.value for s in options.suites()]}, "
                f"heavy={options.heavy}")

    report = run(options)
    try:
        emit(report, options.format.value, options.out)
    except OSError as e:
        print(f"Cannot write report to {options.out}: {e}", file=sys.stderr)
        return EXIT_CONFIG

    summary = report.summary()
    logger.info(f"{summary['passed']} passed, {summary['failed']} failed, {summary['skipped']} skipped")
    return EXIT_FAILED if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
