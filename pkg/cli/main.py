"""
pl: spin and Pauli-Lubanski matrices, spectra, traces and tangles.

Usage:
    pl spin-matrices --spin 3/2
    pl spectrum --twice-spin 4 --format json
    pl traces --spin 1 --max-power 8
    pl casimir --spin 1/2 --momentum 1,0,0,0
    pl tangle --state "v1+v4"
    pl verify --max-twice-spin 10

Exit codes: 0 success, 1 failed check, 2 usage or parse error.
"""

import argparse
import logging
import sys
from collections.abc import Sequence

from config import settings
from services.errors import EigensolverError, PLError

from .commands import COMMANDS, verify
from .output import emit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.PL_LOG_LEVEL, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    spin = common.add_mutually_exclusive_group()
    spin.add_argument("--spin", help="spin as k or k/2, e.g. 3/2")
    spin.add_argument("--twice-spin", type=int, help="2s as an integer, e.g. 3 for s=3/2")
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help=f"max-abs residual tolerance (default PL_TOL={settings.PL_TOL:g})",
    )
    common.add_argument(
        "--format",
        choices=("table", "json"),
        default="table",
        help="output format (default: table)",
    )
    common.add_argument(
        "--strict",
        action="store_true",
        help="exit 1 when any check fails",
    )
    common.add_argument(
        "--verbose",
        action="store_true",
        help="debug logging on stderr",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pl",
        description="Spin and Pauli-Lubanski matrices: identities, spectra, traces, tangles",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    for command in COMMANDS:
        sub = subparsers.add_parser(command.NAME, help=command.HELP, parents=[common])
        command.configure(sub)
        sub.set_defaults(handler=command)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    _configure_logging(args.verbose)
    command = args.handler

    try:
        doc = command.build(args)
    except EigensolverError as e:
        logger.error("%s", e)
        return EXIT_FAILED
    except (PLError, ValueError) as e:
        print(f"pl {command.NAME}: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    print(emit(doc, args.format, command.render))

    if not doc.all_passed:
        failed = [c.name for c in doc.checks if not c.passed]
        logger.warning("%d check(s) failed: %s", len(failed), ", ".join(failed))
        if args.strict or command is verify:
            return EXIT_FAILED
    return EXIT_OK


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
