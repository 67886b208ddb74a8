"""
diam and power: diameter bounds and power iteration for a matrix
"""
import argparse
import logging

import numpy as np

from modules.schemas import DiameterBoundsResponse, DiameterResponse, PowerResponse, ThetaSigmaResponse
from modules.utils import emit, load_matrix, parse_vector
from services.contraction import gap_certifier

from . import EXIT_OK, common_options, run_config

logger = logging.getLogger(__name__)


def run_diam(args: argparse.Namespace) -> int:
    """Δ₁, Δ₂, the sandwich, the θσ bound and a seeded Monte-Carlo estimate"""
    config = run_config(args)
    A = load_matrix(args.matrix_file, args.format)
    bounds = gap_certifier.diameter_bounds(A, config.samples)
    ts = gap_certifier.theta_sigma(A)
    delta_up = bounds.upper if ts is None else min(bounds.upper, ts.diam_bound)
    rng = np.random.default_rng(config.seed)
    sampled = gap_certifier.sampled_delta_diameter(A, config.samples, rng)
    if sampled > delta_up + 1e-9:
        logger.error(f"Sampled diameter {sampled} exceeds certified upper bound {delta_up}")

    emit(DiameterResponse(
        bounds=DiameterBoundsResponse.model_validate(bounds),
        theta_sigma=ThetaSigmaResponse.model_validate(ts) if ts else None,
        delta_up=delta_up,
        sampled=sampled,
        samples=config.samples,
        seed=config.seed,
    ))
    return EXIT_OK


def run_power(args: argparse.Namespace) -> int:
    """Power iteration with the certified per-step error bound"""
    config = run_config(args)
    A = load_matrix(args.matrix_file, args.format)
    x0 = parse_vector(args.x0) if args.x0 else None
    contraction = gap_certifier.contraction_coefficient(gap_certifier.delta_upper(A, config.samples))
    result = gap_certifier.power_iterate(
        A,
        x0=x0,
        tol=config.tolerance,
        max_iter=config.max_iter,
        contraction=contraction,
    )
    emit(PowerResponse(
        eigenvalue=result.eigenvalue,
        vector=result.vector,
        iterations=result.iterations,
        contraction=contraction,
        error_bound=result.error_bound,
        residual=result.residual,
        step_deltas=result.step_deltas,
        error_bounds=result.error_bounds,
    ))
    return EXIT_OK


def register(subparsers) -> None:
    diam_parser = subparsers.add_parser(
        "diam",
        parents=[common_options()],
        help="δ-diameter bounds for the image of the cone",
    )
    diam_parser.add_argument("matrix_file", help="Matrix file (JSON or CSV)")
    diam_parser.set_defaults(handler=run_diam)

    power_parser = subparsers.add_parser(
        "power",
        parents=[common_options()],
        help="Power iteration with certified error bounds",
    )
    power_parser.add_argument("matrix_file", help="Matrix file (JSON or CSV)")
    power_parser.add_argument("--x0", default=None, help='Start vector as JSON, e.g. \'[1, 0]\' (default: all ones)')
    power_parser.set_defaults(handler=run_power)
