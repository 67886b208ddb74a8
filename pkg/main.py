"""
Command-line entry point for the cone certification toolkit
Certifies spectral gaps of matrices acting on the complex cone ℂ₊ⁿ and compares
the projective metric δ with the hyperbolic gauge
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from modules import settings, setup_logging, _get_log_level, ConeCertError, ConditionFailedError
from commands import EXIT_CONDITION_FAILED, EXIT_INPUT_ERROR, EXIT_OK
from commands import check, certify, metric, spectral, gauge

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Create the parser and include every command module"""
    parser = argparse.ArgumentParser(
        prog="conecert",
        description="Spectral gap certification on the complex cone ℂ₊ⁿ",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Override settings.LOG_LEVEL",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    # Include commands
    check.register(subparsers)
    certify.register(subparsers)
    metric.register(subparsers)
    spectral.register(subparsers)
    gauge.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and map failures onto exit codes.

    Returns:
        0 on success, 2 when the cone condition fails, 1 on input or usage errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors; 2 is reserved for a failed condition
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT_ERROR

    # Initialize logging first (before anything else logs)
    log_level = _get_log_level(args.log_level or settings.LOG_LEVEL)
    setup_logging(level=log_level, log_to_file=settings.LOG_TO_FILE, log_dir=settings.LOG_DIR)

    try:
        return args.handler(args)
    except ConditionFailedError as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_CONDITION_FAILED
    except (ConeCertError, ValidationError, ValueError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
