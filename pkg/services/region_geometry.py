"""
Geometry of E-regions: disks, half-planes and disk complements

Also holds the right-half-plane Poincaré metric and the closed-form hyperbolic
distances between 0 and ∞ used to bound Rugh's gauge.
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple, Union

import numpy as np

from modules.config import settings
from modules.exceptions import GeometryError

logger = logging.getLogger(__name__)

ZERO_TOL = settings.ZERO_TOL
INF = math.inf

# Extended nonnegative real: a float that may be math.inf
MetricValue = float


@dataclass(frozen=True)
class Disk:
    """Closed disk; radius 0 is a point"""
    center: complex
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.center.real) and math.isfinite(self.center.imag)):
            raise GeometryError(f"disk center must be finite, got {self.center}")
        if not self.radius >= 0 or not math.isfinite(self.radius):
            raise GeometryError(f"disk radius must be finite and ≥ 0, got {self.radius}")

    def contains(self, z: complex, tol: float = ZERO_TOL) -> bool:
        return abs(z - self.center) <= self.radius + tol * max(1.0, abs(self.center), self.radius)

    def mod_bounds(self) -> Tuple[float, float]:
        modulus = abs(self.center)
        return max(0.0, modulus - self.radius), modulus + self.radius

    def scaled(self, factor: float) -> "Disk":
        return Disk(center=complex(self.center * factor), radius=float(self.radius * factor))

    def contains_disk(self, other: "Disk", tol: float = ZERO_TOL) -> bool:
        scale = max(1.0, abs(self.center), self.radius)
        return abs(other.center - self.center) + other.radius <= self.radius + tol * scale


@dataclass(frozen=True)
class HalfPlane:
    """{z : Re(z·conj(normal)) ≥ offset}"""
    normal: complex
    offset: float

    def __post_init__(self):
        if abs(abs(self.normal) - 1.0) > 1e-9:
            raise GeometryError(f"half-plane normal must be a unit vector, got {self.normal}")

    def contains(self, z: complex, tol: float = ZERO_TOL) -> bool:
        return (z * self.normal.conjugate()).real >= self.offset - tol * max(1.0, abs(self.offset))

    def mod_bounds(self) -> Tuple[float, float]:
        return max(0.0, self.offset), INF

    def scaled(self, factor: float) -> "HalfPlane":
        return HalfPlane(normal=self.normal, offset=float(self.offset * factor))


@dataclass(frozen=True)
class DiskComplement:
    """{z : |z − center| ≥ radius} ∪ {∞}"""
    excluded: Disk

    def __post_init__(self):
        if self.excluded.radius <= 0:
            raise GeometryError("excluded disk of a complement must have positive radius")

    def contains(self, z: complex, tol: float = ZERO_TOL) -> bool:
        scale = max(1.0, abs(self.excluded.center), self.excluded.radius)
        return abs(z - self.excluded.center) >= self.excluded.radius - tol * scale

    def mod_bounds(self) -> Tuple[float, float]:
        modulus = abs(self.excluded.center)
        return max(0.0, self.excluded.radius - modulus), INF

    def scaled(self, factor: float) -> "DiskComplement":
        return DiskComplement(excluded=self.excluded.scaled(factor))


RegionPart = Union[Disk, HalfPlane, DiskComplement]


@dataclass(frozen=True)
class Region:
    """Finite union of parts; stands for E(x,y)"""
    parts: Tuple[RegionPart, ...]

    def contains(self, z: complex, tol: float = ZERO_TOL) -> bool:
        return any(part.contains(z, tol) for part in self.parts)

    @property
    def disks(self) -> List[Disk]:
        return [part for part in self.parts if isinstance(part, Disk)]

    @property
    def is_bounded(self) -> bool:
        return all(isinstance(part, Disk) for part in self.parts)

    def simplified(self, tol: float = ZERO_TOL) -> "Region":
        """Drop duplicate parts and disks contained in another disk"""
        kept: List[RegionPart] = []
        for part in self.parts:
            if any(part == other for other in kept):
                continue
            kept.append(part)

        disks = [part for part in kept if isinstance(part, Disk)]
        result: List[RegionPart] = []
        for index, part in enumerate(kept):
            if isinstance(part, Disk):
                covered = any(
                    other is not part and other.contains_disk(part, tol)
                    and not (part.contains_disk(other, tol) and kept.index(other) > index)
                    for other in disks
                )
                if covered:
                    continue
            result.append(part)
        return Region(tuple(result))


@dataclass(frozen=True)
class MoebiusMap:
    """w ↦ (a·w + b)/(c·w + d), ad − bc ≠ 0"""
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        if scale == 0 or abs(self.determinant) <= ZERO_TOL * scale * scale:
            raise GeometryError(f"degenerate Möbius map (a={self.a}, b={self.b}, c={self.c}, d={self.d})")

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, w: complex) -> complex:
        if w == INF:
            return self.a / self.c if self.c != 0 else complex(INF)
        denominator = self.c * w + self.d
        if denominator == 0:
            return complex(INF)
        return (self.a * w + self.b) / denominator

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, inner: "MoebiusMap") -> "MoebiusMap":
        """self ∘ inner"""
        return MoebiusMap(
            self.a * inner.a + self.b * inner.c,
            self.a * inner.b + self.b * inner.d,
            self.c * inner.a + self.d * inner.c,
            self.c * inner.b + self.d * inner.d,
        )


def _line_half_plane(p1: complex, p2: complex, inside: complex) -> HalfPlane:
    """Half-plane bounded by the line through p1, p2 that contains `inside`"""
    direction = p2 - p1
    normal = 1j * direction / abs(direction)
    if ((inside - p1) * normal.conjugate()).real < 0:
        normal = -normal
    return HalfPlane(normal=complex(normal), offset=float((p1 * normal.conjugate()).real))


def moebius_image_rhp(phi: MoebiusMap) -> RegionPart:
    """
    Image of the right half-plane {Re w > 0} under φ, closed up

    The pole −d/c decides the shape: in the left half-plane the image is a disk,
    on the imaginary axis a half-plane, in the right half-plane a disk complement.
    Circle centers come from the reflection of the pole across the imaginary axis,
    which φ sends to the center of the image circle.
    """
    scale = max(abs(phi.a), abs(phi.b), abs(phi.c), abs(phi.d))

    if abs(phi.c) <= ZERO_TOL * scale:
        # Affine: w ↦ κw + β
        kappa = phi.a / phi.d
        beta = phi.b / phi.d
        normal = kappa / abs(kappa)
        return HalfPlane(normal=complex(normal), offset=float((beta * normal.conjugate()).real))

    pole = -phi.d / phi.c
    pole_scale = max(1.0, abs(pole))
    if abs(pole.real) <= ZERO_TOL * pole_scale:
        p1 = phi.a / phi.c
        p2 = phi(1j * (pole.imag + 1.0))
        inside = phi(1.0 + 1j * pole.imag)
        return _line_half_plane(p1, p2, inside)

    center = phi(-pole.conjugate())
    radius = abs(center - phi(1j))
    if pole.real < 0:
        return Disk(center=complex(center), radius=float(radius))
    return DiskComplement(excluded=Disk(center=complex(center), radius=float(radius)))


def region_mod_bounds(region: Region) -> Tuple[float, MetricValue]:
    """
    (inf |z|, sup |z|) over the region

    Args:
        region: Non-empty region

    Returns:
        Tuple (a, b) with b possibly math.inf
    """
    if not region.parts:
        raise GeometryError("region is empty")
    bounds = [part.mod_bounds() for part in region.parts]
    return min(low for low, _ in bounds), max(high for _, high in bounds)


def _require_rhp(z: complex, what: str) -> None:
    if not z.real > ZERO_TOL * max(1.0, abs(z)):
        raise GeometryError(f"{what} must lie in the open right half-plane, got {z}")


def rhp_poincare(a: complex, b: complex) -> float:
    """
    Poincaré distance in the right half-plane

    ρ(a,b) = log[(|a+b̄|+|a−b|)/(|a+b̄|−|a−b|)] = 2·atanh(|a−b|/|a+b̄|)
    """
    a = complex(a)
    b = complex(b)
    _require_rhp(a, "first point")
    _require_rhp(b, "second point")
    ratio = abs(a - b) / abs(a + b.conjugate())
    return float(2.0 * math.atanh(min(ratio, 1.0 - 1e-16)))


def _require_disk_in_rhp(disk: Disk) -> None:
    scale = max(1.0, abs(disk.center), disk.radius)
    if disk.center.real - disk.radius <= ZERO_TOL * scale:
        raise GeometryError(f"disk ({disk.center}, {disk.radius}) is not strictly inside the right half-plane")


def disk_rhp_diameter(disk: Disk) -> float:
    """log((Re c + r)/(Re c − r))"""
    _require_disk_in_rhp(disk)
    return float(math.log1p(2.0 * disk.radius / (disk.center.real - disk.radius)))


def hyperbolic_center(disk: Disk) -> Tuple[complex, float]:
    """
    Hyperbolic center and radius of a disk inside the right half-plane

    The horizontal diameter is a geodesic; its hyperbolic midpoint is at
    real part sqrt((Re c − r)(Re c + r)).
    """
    _require_disk_in_rhp(disk)
    u = disk.center.real
    center = complex(math.sqrt((u - disk.radius) * (u + disk.radius)), disk.center.imag)
    return center, 0.5 * disk_rhp_diameter(disk)


class DiameterEstimate(NamedTuple):
    lower: float
    upper: float


def _rho_grid(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    ratio = np.abs(p[:, None] - q[None, :]) / np.abs(p[:, None] + np.conj(q)[None, :])
    return 2.0 * np.arctanh(np.minimum(ratio, 1.0 - 1e-16))


def _golden_refine(func, lo: float, hi: float, iterations: int = 40) -> Tuple[float, float]:
    """Maximize a unimodal-ish function on [lo, hi]; returns (argmax, max)"""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = func(x1), func(x2)
    for _ in range(iterations):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = func(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = func(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def rhp_union_diameter(disks: Iterable[Disk], samples: int = 256, refine_pairs: int = 3) -> DiameterEstimate:
    """
    Poincaré diameter of a finite union of disks in the right half-plane

    Args:
        disks: Disks strictly inside the right half-plane
        samples: Angular grid size per circle (≥ 16)
        refine_pairs: How many disk pairs get the grid search and golden refinement

    Returns:
        DiameterEstimate(lower, upper). The upper bound is R_i + ρ(h_i,h_j) + R_j
        over hyperbolic centers h and radii R; the lower estimate is realized by
        actual boundary points.
    """
    if samples < 16:
        raise GeometryError(f"samples must be ≥ 16, got {samples}")
    unique: List[Disk] = []
    for disk in disks:
        _require_disk_in_rhp(disk)
        if disk not in unique:
            unique.append(disk)
    if not unique:
        raise GeometryError("no disks supplied")

    balls = [hyperbolic_center(disk) for disk in unique]
    lower = max(2.0 * radius for _, radius in balls)

    candidates: List[Tuple[float, int, int]] = []
    upper = lower
    for i in range(len(unique)):
        for j in range(i + 1, len(unique)):
            value = balls[i][1] + rhp_poincare(balls[i][0], balls[j][0]) + balls[j][1]
            upper = max(upper, value)
            candidates.append((value, i, j))
    # R_i + ρ(h_i,h_j) + R_j is the exact diameter of two hyperbolic balls, so `upper`
    # is already exact; refining the top pairs only tightens `lower`
    candidates.sort(reverse=True)

    angles = 2.0 * np.pi * np.arange(samples) / samples
    unit = np.exp(1j * angles)
    for _, i, j in candidates[:refine_pairs]:
        di, dj = unique[i], unique[j]
        grid = _rho_grid(di.center + di.radius * unit, dj.center + dj.radius * unit)
        best_i, best_j = np.unravel_index(int(np.argmax(grid)), grid.shape)
        best = float(grid[best_i, best_j])
        ti, tj = float(angles[best_i]), float(angles[best_j])
        step = 2.0 * np.pi / samples

        def along_i(t: float) -> float:
            return rhp_poincare(di.center + di.radius * np.exp(1j * t), dj.center + dj.radius * np.exp(1j * tj))

        def along_j(t: float) -> float:
            return rhp_poincare(di.center + di.radius * np.exp(1j * ti), dj.center + dj.radius * np.exp(1j * t))

        for _ in range(3):
            ti, value_i = _golden_refine(along_i, ti - step, ti + step)
            tj, value_j = _golden_refine(along_j, tj - step, tj + step)
            best = max(best, value_i, value_j)
        lower = max(lower, best)

    return DiameterEstimate(lower=min(lower, upper), upper=upper)


def poincare_complement_disk(disk: Disk) -> float:
    """Distance between 0 and ∞ in Ĉ minus the closed disk: log((|c|+r)/(|c|−r))"""
    modulus = abs(disk.center)
    if modulus - disk.radius <= ZERO_TOL * max(1.0, modulus):
        raise GeometryError(f"disk ({disk.center}, {disk.radius}) contains or touches 0")
    return float(math.log1p(2.0 * disk.radius / (modulus - disk.radius)))


def omega_alpha_distance(a: float, b: float, alpha: float) -> float:
    """α·log(b/a) for the two-disk complement Ω_α"""
    if not (a > 0 and b >= a):
        raise GeometryError(f"need 0 < a ≤ b, got a={a}, b={b}")
    if alpha < 1:
        raise GeometryError(f"alpha must be ≥ 1, got {alpha}")
    return float(alpha * math.log(b / a))


def _angular_span(disks: Sequence[Disk]) -> Tuple[float, float]:
    """
    Rotation angle and half-width of the smallest sector around the mean direction
    covering every disk
    """
    mean = sum(abs(d.center) * d.center for d in disks)
    reference = float(np.angle(mean)) if abs(mean) > 0 else 0.0
    lows, highs = [], []
    for disk in disks:
        spread = math.asin(min(1.0, disk.radius / abs(disk.center)))
        offset = float(np.angle(disk.center * np.exp(-1j * reference)))
        lows.append(offset - spread)
        highs.append(offset + spread)
    low, high = min(lows), max(highs)
    return reference + 0.5 * (low + high), 0.5 * (high - low)


def sector_upper_bound(region: Region, alpha_cap: float = 16.0) -> MetricValue:
    """
    Upper bound α·log(b/a) from a sector enclosed by the complement of Ω_α

    The smallest admissible α solves 2·arctan(σ/tan(π/(2α))) = Θ with
    σ = (b−a)/(b+a); returns +∞ when the parts do not fit in a sector of
    half-angle below π/2 or α would exceed alpha_cap.
    """
    disks = region.disks
    if not disks or len(disks) != len(region.parts):
        return INF
    a, b = region_mod_bounds(region)
    if a <= ZERO_TOL * b:
        return INF
    _, theta = _angular_span(disks)
    if theta >= math.pi / 2 - ZERO_TOL:
        return INF

    sigma = (b - a) / (b + a)
    if theta <= ZERO_TOL:
        alpha = 1.0
    elif sigma <= ZERO_TOL:
        # distinct directions on one circle: no Ω_α fits
        return INF
    else:
        alpha = math.pi / (2.0 * math.atan(sigma / math.tan(0.5 * theta)))
        alpha = max(1.0, alpha * (1.0 + 1e-12))
    if alpha > alpha_cap:
        logger.debug(f"Sector bound needs alpha={alpha:.3f} above cap {alpha_cap}")
        return INF
    return omega_alpha_distance(a, b, alpha)


def separating_line_bound(region: Region) -> MetricValue:
    """
    Upper bound from the annulus cut by a line separating D(0,a) from the centers

    With β = cosh(δ/2), γ = sinh(δ/2) the bound is
    4·asinh(1/β) + 4γ·arctan(γ/√(1+β²)) + πγ, never above π√2·e^{δ/2}.
    Returns +∞ when no separating direction is found.
    """
    disks = region.disks
    if not disks or len(disks) != len(region.parts):
        return INF
    a, b = region_mod_bounds(region)
    if a <= ZERO_TOL * b:
        return INF

    centers = np.array([d.center for d in disks], dtype=np.complex128)
    rotation, _ = _angular_span(disks)
    trial = np.concatenate(([rotation], np.linspace(-np.pi, np.pi, 721)))
    support = np.min((centers[None, :] * np.exp(-1j * trial)[:, None]).real, axis=1)
    if np.max(support) < a * (1.0 - 1e-9):
        return INF

    half_delta = 0.5 * math.log(b / a)
    beta = math.cosh(half_delta)
    gamma = math.sinh(half_delta)
    return float(
        4.0 * math.asinh(1.0 / beta)
        + 4.0 * gamma * math.atan(gamma / math.sqrt(1.0 + beta * beta))
        + math.pi * gamma
    )

