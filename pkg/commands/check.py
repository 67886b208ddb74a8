"""
check: does the matrix map ℂ₊ⁿ∖0 into the interior of the cone
"""
import argparse
import logging

from modules.schemas import ConditionReportResponse
from modules.utils import emit, load_matrix
from services.contraction import gap_certifier

from . import EXIT_CONDITION_FAILED, EXIT_OK, common_options

logger = logging.getLogger(__name__)


def run(args: argparse.Namespace) -> int:
    """Emit the ConditionReport; exit 2 when the condition fails"""
    A = load_matrix(args.matrix_file, args.format)
    report = gap_certifier.check_condition(A)
    emit(ConditionReportResponse.model_validate(report))
    if not report.holds:
        logger.info(f"Condition fails at {report.first_violation}")
        return EXIT_CONDITION_FAILED
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "check",
        parents=[common_options()],
        help="Check the cone condition for a matrix",
    )
    parser.add_argument("matrix_file", help="Matrix file (JSON or CSV)")
    parser.set_defaults(handler=run)
