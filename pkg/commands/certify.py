"""
certify: spectral gap certificate for a matrix acting on ℂ₊ⁿ
"""
import argparse
import logging

from modules.schemas import (
    CertificateResponse,
    ConditionReportResponse,
    DiameterBoundsResponse,
    LeadingPairResponse,
    OracleResponse,
    RunConfig,
    ThetaSigmaResponse,
)
from modules.utils import emit, load_matrix
from services.contraction import GapCertificate, gap_certifier

from . import EXIT_CONDITION_FAILED, EXIT_OK, common_options, run_config

logger = logging.getLogger(__name__)


def certificate_response(certificate: GapCertificate, config: RunConfig) -> CertificateResponse:
    """Build the output schema from a GapCertificate"""
    return CertificateResponse(
        certified=certificate.certified,
        condition=ConditionReportResponse.model_validate(certificate.condition),
        aperture=certificate.aperture,
        diameter=DiameterBoundsResponse.model_validate(certificate.diameter) if certificate.diameter else None,
        theta_sigma=ThetaSigmaResponse.model_validate(certificate.theta_sigma) if certificate.theta_sigma else None,
        delta_up=certificate.delta_up,
        contraction=certificate.contraction,
        leading=LeadingPairResponse.model_validate(certificate.leading) if certificate.leading else None,
        oracle=OracleResponse.model_validate(certificate.oracle) if certificate.oracle else None,
        config=config,
    )


def run(args: argparse.Namespace) -> int:
    config = run_config(args)
    A = load_matrix(args.matrix_file, args.format)
    certificate = gap_certifier.certify(
        A,
        samples=config.samples,
        tol=config.tolerance,
        max_iter=config.max_iter,
        oracle=config.oracle,
    )
    emit(certificate_response(certificate, config))
    if not certificate.condition.holds:
        return EXIT_CONDITION_FAILED
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "certify",
        parents=[common_options()],
        help="Certify the spectral gap of a matrix",
    )
    parser.add_argument("matrix_file", help="Matrix file (JSON or CSV)")
    parser.set_defaults(handler=run)
