"""
The cone ℂ₊ⁿ = {v : Re(v_k·conj(v_l)) ≥ 0 for all k, l}

Membership, the disk decomposition of E(x,y), the projective metric δ, the real
Hilbert metric it extends, and the sectional-aperture alignment bound.
"""
import logging
import math
from enum import Enum
from typing import Iterable, NamedTuple, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike

from modules.config import settings
from modules.exceptions import DimensionError, NotInConeError, ZeroVectorError
from services.numerics import ComplexVector, as_vector
from services.region_geometry import INF, Disk, MetricValue, Region

logger = logging.getLogger(__name__)

SIGN_TOL = settings.ZERO_TOL
COLINEAR_TOL = settings.ZERO_TOL


class ConeClass(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


class ApertureWitness(NamedTuple):
    K: float
    m: ComplexVector


class AlignResult(NamedTuple):
    alpha: complex
    bound: float
    residual: float


def _nonzero_vector(v: ArrayLike) -> ComplexVector:
    arr = as_vector(v)
    if not np.any(arr):
        raise ZeroVectorError("zero vector has no projective class")
    return arr


def _check_same_length(x: ComplexVector, y: ComplexVector) -> None:
    if x.size != y.size:
        raise DimensionError(f"vectors have lengths {x.size} and {y.size}")


def classify(v: ArrayLike) -> ConeClass:
    """
    Interior, boundary or outside of ℂ₊ⁿ

    Sign tests on Re(v_k·conj(v_l)) are relative to |v_k||v_l|.
    """
    v = _nonzero_vector(v)
    products = v[:, None] * np.conj(v)[None, :]
    scale = np.abs(v)[:, None] * np.abs(v)[None, :]
    margin = products.real
    if np.any(margin < -SIGN_TOL * scale):
        return ConeClass.OUTSIDE
    if np.all(margin > SIGN_TOL * scale):
        return ConeClass.INTERIOR
    return ConeClass.BOUNDARY


def are_colinear(x: ArrayLike, y: ArrayLike, tol: float = COLINEAR_TOL) -> bool:
    """All 2x2 minors x_k y_l − x_l y_k vanish relative to ‖x‖‖y‖"""
    x = as_vector(x)
    y = as_vector(y)
    _check_same_length(x, y)
    minors = x[:, None] * y[None, :] - x[None, :] * y[:, None]
    return bool(np.max(np.abs(minors)) <= tol * np.linalg.norm(x) * np.linalg.norm(y))


def _disk_arrays(x: ComplexVector, y: ComplexVector) -> Tuple[np.ndarray, np.ndarray]:
    """Centers c_kl and radii r_kl for k ≤ l, x interior"""
    rows, cols = np.triu_indices(x.size)
    xk, xl = x[rows], x[cols]
    yk, yl = y[rows], y[cols]
    denominator = 2.0 * (xk * np.conj(xl)).real
    centers = (np.conj(xl) * yk + np.conj(xk) * yl) / denominator
    radii = np.abs(xl * yk - xk * yl) / denominator
    return centers, radii


def _require_interior(x: ComplexVector, name: str = "x") -> None:
    if classify(x) is not ConeClass.INTERIOR:
        raise NotInConeError(f"{name} must lie in the interior of the cone")


def e_region(x: ArrayLike, y: ArrayLike) -> Region:
    """
    E(x,y) as a union of closed disks

    Args:
        x: Interior point of ℂ₊ⁿ
        y: Non-zero vector of the same length

    Returns:
        Region of Disk(c_kl, r_kl) over k ≤ l, exact duplicates removed;
        k = l gives the point y_k/x_k
    """
    x = _nonzero_vector(x)
    y = _nonzero_vector(y)
    _check_same_length(x, y)
    _require_interior(x)
    centers, radii = _disk_arrays(x, y)
    parts = tuple(Disk(center=complex(c), radius=float(r)) for c, r in zip(centers, radii))
    return Region(tuple(dict.fromkeys(parts)))


def _oriented_delta(x: ComplexVector, y: ComplexVector) -> MetricValue:
    centers, radii = _disk_arrays(x, y)
    moduli = np.abs(centers)
    b = float(np.max(moduli + radii))
    a = float(np.min(moduli - radii))
    if a <= SIGN_TOL * b:
        return INF
    return float(math.log(b / a))


def delta(x: ArrayLike, y: ArrayLike) -> MetricValue:
    """
    Projective metric δ(x,y) = log(sup|E| / inf|E|)

    Colinear pairs give 0. When both points are interior both orientations are
    computed and must agree; when only one is interior that orientation is used;
    otherwise the pair is at infinite distance.
    """
    x = _nonzero_vector(x)
    y = _nonzero_vector(y)
    _check_same_length(x, y)
    if are_colinear(x, y):
        return 0.0

    x_interior = classify(x) is ConeClass.INTERIOR
    y_interior = classify(y) is ConeClass.INTERIOR
    if x_interior and y_interior:
        forward = _oriented_delta(x, y)
        backward = _oriented_delta(y, x)
        if not math.isclose(forward, backward, rel_tol=1e-9, abs_tol=1e-9):
            logger.warning(f"delta orientations disagree: {forward!r} vs {backward!r}")
        return max(forward, backward)
    if x_interior:
        return _oriented_delta(x, y)
    if y_interior:
        return _oriented_delta(y, x)
    logger.debug("delta: neither point is interior, returning inf")
    return INF


def hilbert_rplus(x: ArrayLike, y: ArrayLike) -> float:
    """Hilbert metric on ℝ₊ⁿ: log(max(y/x) / min(y/x))"""
    x_arr = np.asarray(x)
    y_arr = np.asarray(y)
    if np.iscomplexobj(x_arr) and np.any(x_arr.imag != 0) or np.iscomplexobj(y_arr) and np.any(y_arr.imag != 0):
        raise NotInConeError("hilbert_rplus needs real vectors")
    x_arr = np.real(x_arr).astype(float)
    y_arr = np.real(y_arr).astype(float)
    if x_arr.ndim != 1 or x_arr.shape != y_arr.shape or x_arr.size == 0:
        raise DimensionError("hilbert_rplus needs two vectors of equal length")
    if np.any(x_arr <= 0) or np.any(y_arr <= 0):
        raise NotInConeError("hilbert_rplus needs strictly positive coordinates")
    ratios = y_arr / x_arr
    return float(math.log(np.max(ratios) / np.min(ratios)))


def aperture_witness(n: int) -> ApertureWitness:
    """m = (1,…,1) with K = √n, since |Σu_k|² ≥ ‖u‖² on ℂ₊ⁿ"""
    if n < 1:
        raise DimensionError(f"dimension must be ≥ 1, got {n}")
    return ApertureWitness(K=math.sqrt(n), m=np.ones(n, dtype=np.complex128))


def align(x: ArrayLike, y: ArrayLike, delta_value: Optional[float] = None) -> AlignResult:
    """
    Phase α minimizing ‖αy − x‖, with the certified bound K·δ(x,y)

    Args:
        x: Unit vector in the cone
        y: Unit vector in the cone
        delta_value: Precomputed δ(x,y), to avoid recomputation

    Returns:
        AlignResult(alpha, bound, residual) with residual ≤ bound
    """
    x = _nonzero_vector(x)
    y = _nonzero_vector(y)
    _check_same_length(x, y)
    for name, v in (("x", x), ("y", y)):
        if abs(np.linalg.norm(v) - 1.0) > 1e-9:
            raise DimensionError(f"{name} must be a unit vector")
    distance = delta(x, y) if delta_value is None else delta_value
    if math.isinf(distance):
        raise NotInConeError("alignment needs a finite δ")

    overlap = np.vdot(y, x)
    alpha = complex(overlap / abs(overlap)) if abs(overlap) > 0 else 1.0 + 0.0j
    residual = float(np.linalg.norm(alpha * y - x))
    bound = aperture_witness(x.size).K * distance
    return AlignResult(alpha=alpha, bound=float(bound), residual=residual)


def delta_dual_estimate(x: ArrayLike, y: ArrayLike, functionals: Iterable[ArrayLike]) -> float:
    """
    Lower estimate of δ from the dual formula sup log|f(y)g(x) / (f(x)g(y))|

    Interior points of ℂ₊ⁿ never vanish on the cone under the bilinear pairing,
    so any family of them gives a valid lower estimate.
    """
    x = _nonzero_vector(x)
    y = _nonzero_vector(y)
    _check_same_length(x, y)
    values = []
    for f in functionals:
        f = as_vector(f)
        _check_same_length(f, x)
        _require_interior(f, "functional")
        fx, fy = np.dot(f, x), np.dot(f, y)
        if fx == 0 or fy == 0:
            return INF
        values.append(fy / fx)
    if len(values) < 2:
        return 0.0
    moduli = np.abs(np.array(values))
    return float(math.log(np.max(moduli) / np.min(moduli)))
