"""
compare and demo-remark: δ against the hyperbolic gauge
"""
import argparse
import logging

from modules.exceptions import InputFileError
from modules.schemas import (
    ComparisonResponse,
    DcIntervalResponse,
    DtildeResponse,
    InequalityChecks,
    RemarkDemoResponse,
    RemarkRowResponse,
    ThetaSigmaResponse,
)
from modules.utils import emit, load_vectors
from services.cone_cpn import delta
from services.contraction import gap_certifier
from services.gauge_compare import InequalityReport, gauge_comparator

from . import EXIT_OK, common_options

logger = logging.getLogger(__name__)

DEFAULT_K = [2, 4, 8, 16]


def comparison_response(report: InequalityReport) -> ComparisonResponse:
    return ComparisonResponse(
        delta=report.delta,
        dc=DcIntervalResponse.model_validate(report.dc),
        dtilde=DtildeResponse.model_validate(report.dtilde._asdict()),
        checks=InequalityChecks(
            half_delta_ok=report.half_delta_ok,
            exp_bound_ok=report.exp_bound_ok,
            finiteness_consistent=report.finiteness_consistent,
        ),
        delta_vs_dc=report.delta_exceeds_d,
        notes=report.notes,
    )


def run_compare(args: argparse.Namespace) -> int:
    """Report for the first and last vector; intermediate vectors form the d̃ chain"""
    vectors = load_vectors(args.vectors_file, args.format)
    if vectors.shape[0] < 2:
        raise InputFileError(f"need at least 2 vectors, got {vectors.shape[0]}")
    chain = list(vectors) if vectors.shape[0] > 2 else None
    report = gauge_comparator.inequality_report(vectors[0], vectors[-1], chain=chain)
    emit(comparison_response(report))
    return EXIT_OK


def run_demo_remark(args: argparse.Namespace) -> int:
    """Gauge bounds along the k-sequence and θσ growth of the α/k matrix family"""
    rows = []
    for k in args.k:
        triple = gauge_comparator.remark_sequences(k)
        ts = gap_certifier.theta_sigma(gauge_comparator.remark_matrix(k, args.alpha))
        rows.append(RemarkRowResponse(
            k=k,
            x=triple.x,
            y=triple.y,
            z=triple.z,
            delta_xy=delta(triple.x, triple.y),
            dc_xy=DcIntervalResponse.model_validate(gauge_comparator.dc_bounds_for_pair(triple.x, triple.y)),
            dtilde_via_z=DtildeResponse.model_validate(
                gauge_comparator.dtilde_bounds([triple.x, triple.z, triple.y])._asdict()
            ),
            matrix_theta_sigma=ThetaSigmaResponse.model_validate(ts) if ts else None,
        ))

    ordered = sorted(rows, key=lambda row: row.k)
    nondecreasing = all(a.dc_xy.upper <= b.dc_xy.upper + 1e-12 for a, b in zip(ordered, ordered[1:]))
    x, y = gauge_comparator.figure_pair()
    emit(RemarkDemoResponse(
        alpha=args.alpha,
        rows=rows,
        dc_upper_nondecreasing=nondecreasing,
        figure_pair=comparison_response(gauge_comparator.inequality_report(x, y)),
    ))
    return EXIT_OK


def register(subparsers) -> None:
    compare_parser = subparsers.add_parser(
        "compare",
        parents=[common_options()],
        help="Compare δ with the hyperbolic gauge for a pair",
    )
    compare_parser.add_argument("vectors_file", help="Vectors file; first and last vector form the pair")
    compare_parser.set_defaults(handler=run_compare)

    demo_parser = subparsers.add_parser(
        "demo-remark",
        parents=[common_options()],
        help="Gauge bounds along the linear-growth sequence",
    )
    demo_parser.add_argument("--k", type=int, nargs="+", default=DEFAULT_K, help="Sequence indices (default: 2 4 8 16)")
    demo_parser.add_argument("--alpha", type=float, default=1.0, help="Off-diagonal scale of the α/k matrix family")
    demo_parser.set_defaults(handler=run_demo_remark)
