"""
delta and region: pairwise δ values and E-region plot data
"""
import argparse
import logging
from typing import Optional

import numpy as np

from modules.exceptions import InputFileError
from modules.schemas import DeltaMatrixResponse, RegionPartResponse, RegionResponse
from modules.utils import emit, load_cone_spec, load_vectors
from services.cone_cpn import delta, e_region
from services.cone_general import ConeSpec, delta_general, e_region_general
from services.region_geometry import Disk, DiskComplement, HalfPlane, Region, RegionPart, region_mod_bounds

from . import EXIT_OK, common_options

logger = logging.getLogger(__name__)


def _cone_spec(args: argparse.Namespace) -> Optional[ConeSpec]:
    if not args.cone:
        return None
    return ConeSpec(load_cone_spec(args.cone, args.format))


def _require_vectors(vectors: np.ndarray, minimum: int = 2) -> None:
    if vectors.shape[0] < minimum:
        raise InputFileError(f"need at least {minimum} vectors, got {vectors.shape[0]}")


def part_response(part: RegionPart) -> RegionPartResponse:
    if isinstance(part, Disk):
        return RegionPartResponse(kind="disk", center=part.center, radius=part.radius)
    if isinstance(part, HalfPlane):
        return RegionPartResponse(kind="half_plane", normal=part.normal, offset=part.offset)
    if isinstance(part, DiskComplement):
        return RegionPartResponse(kind="disk_complement", center=part.excluded.center, radius=part.excluded.radius)
    raise TypeError(f"unknown region part {type(part).__name__}")


def region_response(region: Region, cone: str = "cpn") -> RegionResponse:
    a, b = region_mod_bounds(region)
    return RegionResponse(
        cone=cone,
        parts=[part_response(p) for p in region.parts],
        inf_modulus=a,
        sup_modulus=b,
    )


def run_delta(args: argparse.Namespace) -> int:
    """Pairwise δ matrix; "inf" marks pairs at infinite distance"""
    vectors = load_vectors(args.vectors_file, args.format)
    _require_vectors(vectors)
    spec = _cone_spec(args)
    count = vectors.shape[0]

    deltas = [[0.0] * count for _ in range(count)]
    for i in range(count):
        for j in range(i + 1, count):
            if spec is None:
                value = delta(vectors[i], vectors[j])
            else:
                value = delta_general(spec, vectors[i], vectors[j])
            deltas[i][j] = deltas[j][i] = value

    emit(DeltaMatrixResponse(
        cone="cpn" if spec is None else "general",
        dimension=vectors.shape[1],
        deltas=deltas,
    ))
    return EXIT_OK


def run_region(args: argparse.Namespace) -> int:
    """E(x,y) for the first two vectors of the file"""
    vectors = load_vectors(args.vectors_file, args.format)
    _require_vectors(vectors)
    if vectors.shape[0] > 2:
        logger.info(f"region uses the first two of {vectors.shape[0]} vectors")
    spec = _cone_spec(args)
    x, y = vectors[0], vectors[1]

    region = e_region(x, y) if spec is None else e_region_general(spec, x, y)
    if not args.raw:
        region = region.simplified()
    emit(region_response(region, cone="cpn" if spec is None else "general"))
    return EXIT_OK


def register(subparsers) -> None:
    delta_parser = subparsers.add_parser(
        "delta",
        parents=[common_options()],
        help="Pairwise projective metric between vectors",
    )
    delta_parser.add_argument("vectors_file", help="Vectors file (JSON or CSV)")
    delta_parser.add_argument("--cone", default=None, help="Cone spec file with functionals (default: ℂ₊ⁿ)")
    delta_parser.set_defaults(handler=run_delta)

    region_parser = subparsers.add_parser(
        "region",
        parents=[common_options()],
        help="E-region of a pair as plot data",
    )
    region_parser.add_argument("vectors_file", help="Vectors file (JSON or CSV)")
    region_parser.add_argument("--cone", default=None, help="Cone spec file with functionals (default: ℂ₊ⁿ)")
    region_parser.add_argument("--raw", action="store_true", help="Keep parts covered by other disks")
    region_parser.set_defaults(handler=run_region)
