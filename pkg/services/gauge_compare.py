"""
Comparison of δ with Rugh's hyperbolic gauge d

d(x,y) is the Poincaré distance between 0 and ∞ in the complement of E(x,y).
It is only ever reported as a certified interval.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from modules.config import settings
from modules.exceptions import GeometryError, NotInConeError
from services.cone_cpn import ConeClass, classify, delta, e_region
from services.numerics import ComplexMatrix, ComplexVector, as_vector
from services.region_geometry import (
    INF,
    MetricValue,
    Region,
    poincare_complement_disk,
    sector_upper_bound,
    separating_line_bound,
)

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class DcInterval:
    lower: MetricValue
    upper: MetricValue
    methods: Tuple[str, ...] = ()

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.upper)


class DtildeBounds(NamedTuple):
    lower: MetricValue
    upper: MetricValue
    chain_index: int


@dataclass(frozen=True)
class SequenceTriple:
    k: int
    x: ComplexVector
    y: ComplexVector
    z: ComplexVector


@dataclass(frozen=True)
class InequalityReport:
    delta: MetricValue
    dc: DcInterval
    dtilde: DtildeBounds
    half_delta_ok: bool
    exp_bound_ok: bool
    finiteness_consistent: bool
    delta_exceeds_d: str
    notes: List[str] = field(default_factory=list)


def exp_bound(delta_value: MetricValue) -> MetricValue:
    """π√2·e^{δ/2}"""
    if math.isinf(delta_value):
        return INF
    return math.pi * SQRT2 * math.exp(delta_value / 2.0)


class GaugeComparisonService:
    """Two-sided bounds on d and the chained pseudo-metric d̃"""

    @staticmethod
    def dc_bounds(region: Region, delta_value: MetricValue) -> DcInterval:
        """
        Certified interval for d(x,y) from its E-region

        Args:
            region: E(x,y) as returned by e_region
            delta_value: δ(x,y) for the same pair

        Returns:
            DcInterval; lower = max(δ/2, single-disk values), upper = min of the
            exponential, separating-line and sector bounds. A region that is a
            single disk gives the exact value.
        """
        if math.isinf(delta_value):
            return DcInterval(lower=INF, upper=INF, methods=("infinite-delta",))
        if delta_value == 0:
            return DcInterval(lower=0.0, upper=0.0, methods=("colinear",))
        if not region.is_bounded:
            raise GeometryError("finite δ requires a region made of finite disks")

        essential = region.simplified()
        proper_disks = [d for d in essential.disks if d.radius > 0]
        if len(essential.parts) == 1 and len(proper_disks) == 1:
            exact = poincare_complement_disk(proper_disks[0])
            return DcInterval(lower=exact, upper=exact, methods=("single-disk",))

        methods = ["half-delta"]
        lower = delta_value / 2.0
        if proper_disks:
            disk_value = max(poincare_complement_disk(d) for d in proper_disks)
            if disk_value > lower:
                lower = disk_value
                methods = ["single-disk"]

        candidates = [
            ("exp", exp_bound(delta_value)),
            ("separating-line", separating_line_bound(essential)),
            ("sector", sector_upper_bound(essential, alpha_cap=settings.ALPHA_CAP)),
        ]
        tag, upper = min(candidates, key=lambda item: item[1])
        methods.append(tag)
        return DcInterval(lower=lower, upper=upper, methods=tuple(methods))

    def dc_bounds_for_pair(self, x: ArrayLike, y: ArrayLike) -> DcInterval:
        """dc_bounds on E(x,y), using whichever point is interior as the base"""
        value = delta(x, y)
        if math.isinf(value) or value == 0:
            return self.dc_bounds(Region(()), value)
        base, other = (x, y) if classify(x) is ConeClass.INTERIOR else (y, x)
        return self.dc_bounds(e_region(base, other), value)

    def dtilde_bounds(
        self,
        chain: Sequence[ArrayLike],
        alternatives: Sequence[Sequence[ArrayLike]] = (),
    ) -> DtildeBounds:
        """
        Bounds on d̃ between the endpoints of a chain

        Args:
            chain: Points x_0 … x_n; the endpoints are x_0 and x_n
            alternatives: Further candidate chains with the same endpoints

        Returns:
            DtildeBounds with lower = δ(x_0, x_n)/2 and upper the smallest summed
            d upper bound over the direct pair, `chain` and `alternatives`
            (chain_index 0 = direct, 1 = chain, 2… = alternatives)
        """
        if len(chain) < 2:
            raise GeometryError("a chain needs at least two points")
        start, end = chain[0], chain[-1]
        candidates = [[start, end], list(chain)] + [list(c) for c in alternatives]

        best_index, best_upper = 0, INF
        for index, candidate in enumerate(candidates):
            total = 0.0
            for left, right in zip(candidate, candidate[1:]):
                if math.isinf(delta(left, right)):
                    if index == 1:
                        raise NotInConeError("a link of the chain has infinite δ")
                    total = INF
                    break
                total += self.dc_bounds_for_pair(left, right).upper
            if total < best_upper:
                best_index, best_upper = index, total

        return DtildeBounds(lower=delta(start, end) / 2.0, upper=best_upper, chain_index=best_index)

    @staticmethod
    def dtilde_contraction_bound(diameter: float) -> float:
        """tanh(π·e^{Δ̃}/(2√2))"""
        if diameter < 0:
            raise ValueError(f"diameter must be ≥ 0, got {diameter}")
        return float(math.tanh(math.pi * math.exp(diameter) / (2.0 * SQRT2)))

    @staticmethod
    def rugh_contraction_bound(diameter: float) -> float:
        """tanh(Δ/2)"""
        if diameter < 0:
            raise ValueError(f"diameter must be ≥ 0, got {diameter}")
        return float(math.tanh(diameter / 2.0))

    def rate_comparison(self, delta_diameter: float) -> Tuple[float, float]:
        """
        (tanh(Δ/4), tanh(π√2·e^{Δ/2}/2)): the δ rate next to the gauge rate
        obtained from the converted d-diameter
        """
        return (
            float(math.tanh(delta_diameter / 4.0)),
            self.rugh_contraction_bound(exp_bound(delta_diameter)),
        )

    @staticmethod
    def remark_sequences(k: int) -> SequenceTriple:
        """
        The triple x_k, y_k, z_k in ℂ₊³ whose gauge distance grows linearly in k
        while the chained distance through z_k stays bounded
        """
        if k < 1:
            raise ValueError(f"k must be ≥ 1, got {k}")
        angle = math.pi / 2.0 - math.pi / (2.0 * k)
        phase = complex(math.cos(angle), math.sin(angle))
        cos_k = math.cos(math.pi / (2.0 * k))
        sin_k = math.sin(math.pi / (2.0 * k))

        x = np.array([1.0, phase, phase], dtype=np.complex128)
        y = np.array([2.0, phase, phase + 2j * cos_k], dtype=np.complex128)
        z = np.array([2.0 / (math.sqrt(3.0) * cos_k + sin_k), 1.0, 1.0], dtype=np.complex128)
        for name, v in (("x", x), ("y", y), ("z", z)):
            if classify(v) is ConeClass.OUTSIDE:
                raise NotInConeError(f"{name}_{k} is outside the cone")
        return SequenceTriple(k=k, x=x, y=y, z=z)

    @staticmethod
    def figure_pair() -> Tuple[ComplexVector, ComplexVector]:
        """Pair whose E-region is a three-disk layout with small intersection angles"""
        twelfth = np.exp(1j * math.pi / 12.0)
        x = np.array([1.0, np.conj(twelfth), twelfth], dtype=np.complex128)
        y = np.array(
            [2.0 + np.exp(1j * math.pi / 3.0), (2.0 - 1j) * np.conj(twelfth), (3.0 - 1j) * twelfth],
            dtype=np.complex128,
        )
        return x, y

    @staticmethod
    def remark_matrix(k: int, alpha: float) -> ComplexMatrix:
        """Unit diagonal, off-diagonal α/k (3×3)"""
        if k < 1:
            raise ValueError(f"k must be ≥ 1, got {k}")
        A = np.full((3, 3), alpha / k, dtype=np.complex128)
        np.fill_diagonal(A, 1.0)
        return A

    def inequality_report(self, x: ArrayLike, y: ArrayLike, chain: Optional[Sequence[ArrayLike]] = None) -> InequalityReport:
        """
        δ, the d interval, the d̃ bounds and the comparison checks for one pair

        Args:
            x: First cone point
            y: Second cone point
            chain: Optional chain from x to y used for the d̃ upper bound

        Returns:
            InequalityReport; failures are carried as flags, never raised
        """
        x = as_vector(x)
        y = as_vector(y)
        notes: List[str] = []
        value = delta(x, y)
        dc = self.dc_bounds_for_pair(x, y)

        if math.isinf(value):
            dtilde = DtildeBounds(lower=INF, upper=INF, chain_index=0)
        else:
            dtilde = self.dtilde_bounds(chain if chain is not None else [x, y])

        half_delta_ok = value / 2.0 <= dc.lower + 1e-12 * max(1.0, dc.lower) if math.isfinite(value) else math.isinf(dc.lower)
        exp_ok = dc.upper <= exp_bound(value) + 1e-9 if math.isfinite(value) else True
        finite = math.isfinite(value)
        finiteness_consistent = finite == math.isfinite(dc.upper) == math.isfinite(dtilde.lower)

        if not finite:
            comparison = "infinite"
        elif value > dc.upper:
            comparison = "certified"
        elif value <= dc.lower:
            comparison = "refuted"
        else:
            comparison = "indeterminate"
            notes.append("δ lies inside the d interval; δ > d cannot be decided")

        if not (half_delta_ok and exp_ok and finiteness_consistent):
            logger.error(f"Inequality check failed: half={half_delta_ok}, exp={exp_ok}, finite={finiteness_consistent}")
        return InequalityReport(
            delta=value,
            dc=dc,
            dtilde=dtilde,
            half_delta_ok=half_delta_ok,
            exp_bound_ok=exp_ok,
            finiteness_consistent=finiteness_consistent,
            delta_exceeds_d=comparison,
            notes=notes,
        )


# Global instance
gauge_comparator = GaugeComparisonService()
