"""
Cones cut out by a finite family of functionals

C = {x : Re(⟨m,x⟩·conj⟨l,x⟩) ≥ 0 for all m, l ∈ S}, with ⟨m,x⟩ = Σ m_k x_k.
E-regions are unions of Möbius images of the right half-plane.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from modules.config import settings
from modules.exceptions import DimensionError, GeometryError, NotInConeError, ZeroVectorError
from services.cone_cpn import are_colinear
from services.numerics import ComplexVector, as_vector
from services.region_geometry import (
    INF,
    Disk,
    MetricValue,
    MoebiusMap,
    Region,
    RegionPart,
    moebius_image_rhp,
    region_mod_bounds,
)

logger = logging.getLogger(__name__)

SIGN_TOL = settings.ZERO_TOL


class Membership(str, Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"


@dataclass(frozen=True, eq=False)
class ConeSpec:
    """Finite family S of functionals, stored as the rows of a k×n matrix"""
    functionals: np.ndarray

    def __post_init__(self):
        S = np.array(self.functionals, dtype=np.complex128)
        if S.ndim != 2 or S.shape[0] == 0 or S.shape[1] == 0:
            raise DimensionError("cone spec needs a non-empty list of functionals of equal length")
        if not np.all(np.isfinite(S)):
            raise DimensionError("cone spec has non-finite entries")
        zero_rows = np.flatnonzero(~np.any(S, axis=1))
        if zero_rows.size:
            raise DimensionError(f"functional {int(zero_rows[0]) + 1} is zero")
        S.setflags(write=False)
        object.__setattr__(self, "functionals", S)

    @property
    def dimension(self) -> int:
        return self.functionals.shape[1]

    @property
    def size(self) -> int:
        return self.functionals.shape[0]

    def evaluate(self, x: ArrayLike) -> ComplexVector:
        x = as_vector(x)
        if x.size != self.dimension:
            raise DimensionError(f"spec acts on dimension {self.dimension}, vector has length {x.size}")
        return self.functionals @ x


@dataclass(frozen=True)
class PairFamily:
    """Index pairs (m, l), m < l, whose Möbius map φ_ml is non-degenerate"""
    pairs: Tuple[Tuple[int, int], ...]


def coordinate_spec(n: int) -> ConeSpec:
    """Coordinate functionals e_1 … e_n; the resulting cone is ℂ₊ⁿ"""
    return ConeSpec(np.eye(n, dtype=np.complex128))


def _nonzero(x: ArrayLike) -> ComplexVector:
    x = as_vector(x)
    if not np.any(x):
        raise ZeroVectorError("zero vector")
    return x


def member(spec: ConeSpec, x: ArrayLike) -> Membership:
    """Pairwise test Re(⟨m,x⟩·conj⟨l,x⟩) ≥ −tol·|⟨m,x⟩||⟨l,x⟩|"""
    values = spec.evaluate(_nonzero(x))
    products = (values[:, None] * np.conj(values)[None, :]).real
    scale = np.abs(values)[:, None] * np.abs(values)[None, :]
    if np.all(products >= -SIGN_TOL * scale):
        return Membership.INSIDE
    return Membership.OUTSIDE


def member_R(spec: ConeSpec, x: ArrayLike) -> Membership:
    """Every ⟨m,x⟩ in the closed first quadrant"""
    values = spec.evaluate(_nonzero(x))
    slack = -SIGN_TOL * np.maximum(np.abs(values), 1e-300)
    if np.all(values.real >= slack) and np.all(values.imag >= slack):
        return Membership.INSIDE
    return Membership.OUTSIDE


class _PairData(NamedTuple):
    """Functional values of x and y, each divided by its largest modulus"""
    fx: ComplexVector
    fy: ComplexVector
    x_scale: float
    y_scale: float


def _pair_data(spec: ConeSpec, x: ComplexVector, y: ComplexVector) -> _PairData:
    fx = spec.evaluate(x)
    fy = spec.evaluate(y)
    x_scale = max(float(np.max(np.abs(fx))), 1e-300)
    y_scale = max(float(np.max(np.abs(fy))), 1e-300)
    return _PairData(fx / x_scale, fy / y_scale, x_scale, y_scale)


def pair_family(spec: ConeSpec, x: ArrayLike, y: ArrayLike) -> PairFamily:
    """Pairs with ⟨m,y⟩⟨l,x⟩ − ⟨l,y⟩⟨m,x⟩ ≠ 0"""
    data = _pair_data(spec, _nonzero(x), _nonzero(y))
    fx, fy = data.fx, data.fy
    pairs = []
    for m in range(spec.size):
        for l in range(m + 1, spec.size):
            if abs(fy[m] * fx[l] - fy[l] * fx[m]) > SIGN_TOL:
                pairs.append((m, l))
    return PairFamily(tuple(pairs))


def e_region_general(spec: ConeSpec, x: ArrayLike, y: ArrayLike) -> Region:
    """
    E(x,y) for a finite-family cone

    Each pair (m,l) of the pair family contributes the image of the right
    half-plane under φ_ml(w) = (w⟨m,y⟩ + ⟨l,y⟩)/(w⟨m,x⟩ + ⟨l,x⟩); every
    functional with ⟨m,x⟩ ≠ 0 contributes the point ⟨m,y⟩/⟨m,x⟩.

    The maps use values normalized to unit maximum modulus; their images are
    scaled back by max|⟨·,y⟩| / max|⟨·,x⟩|.
    """
    x = _nonzero(x)
    y = _nonzero(y)
    fx, fy, x_scale, y_scale = _pair_data(spec, x, y)
    if not np.any(fx):
        raise GeometryError("every functional vanishes on x; the pair is degenerate")
    ratio = y_scale / x_scale

    parts: List[RegionPart] = []
    for m, l in pair_family(spec, x, y).pairs:
        phi = MoebiusMap(a=complex(fy[m]), b=complex(fy[l]), c=complex(fx[m]), d=complex(fx[l]))
        parts.append(moebius_image_rhp(phi).scaled(ratio))
    for m in range(spec.size):
        if abs(fx[m]) > SIGN_TOL:
            parts.append(Disk(center=complex(fy[m] / fx[m] * ratio), radius=0.0))
    return Region(tuple(dict.fromkeys(parts)))


def delta_general(spec: ConeSpec, x: ArrayLike, y: ArrayLike) -> MetricValue:
    """δ(x,y) = log(b/a) for the finite-family cone; +∞ if E is unbounded or reaches 0"""
    x = _nonzero(x)
    y = _nonzero(y)
    for name, v in (("x", x), ("y", y)):
        if member(spec, v) is Membership.OUTSIDE:
            raise NotInConeError(f"{name} is not in the cone")
    if are_colinear(x, y):
        return 0.0
    a, b = region_mod_bounds(e_region_general(spec, x, y))
    if math.isinf(b) or a <= SIGN_TOL * b:
        return INF
    return float(math.log(b / a))


def has_independent_functionals(spec: ConeSpec) -> bool:
    """Cheap necessary condition for properness: rank of S is at least 2"""
    return int(np.linalg.matrix_rank(spec.functionals)) >= 2


def complexify_birkhoff(dual_generators: Sequence[ArrayLike]) -> ConeSpec:
    """
    Canonical complexification of a polyhedral real cone

    Args:
        dual_generators: Real vectors generating the dual cone

    Returns:
        ConeSpec with the generators embedded as complex functionals
    """
    if len(dual_generators) == 0:
        raise DimensionError("need at least one dual generator")
    rows = [np.asarray(g, dtype=float) for g in dual_generators]
    spec = ConeSpec(np.array(rows, dtype=np.complex128))
    if not has_independent_functionals(spec):
        logger.warning(f"complexified cone from {len(rows)} generator(s) is not proper (rank < 2)")
    return spec
