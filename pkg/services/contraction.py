"""
Spectral gap certification for matrices acting on ℂ₊ⁿ

Checks that A maps the cone into its interior, bounds the δ-diameter of the
image, turns it into the contraction coefficient tanh(Δ/4) and runs power
iteration with a certified error bound.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike

from modules.config import settings
from modules.exceptions import ConditionFailedError, ConvergenceError, DimensionError, GeometryError, NotInConeError
from services import numerics
from services.cone_cpn import ConeClass, align, aperture_witness, classify, delta, e_region
from services.numerics import ComplexMatrix, ComplexVector, as_matrix, as_vector
from services.region_geometry import INF, DiameterEstimate, Disk, MoebiusMap, moebius_image_rhp, rhp_union_diameter

logger = logging.getLogger(__name__)

Violation = Tuple[int, int, int, int]


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    margin: float
    first_violation: Optional[Violation] = None


@dataclass(frozen=True)
class ThetaSigma:
    theta: float
    sigma: float
    diam_bound: float


@dataclass(frozen=True)
class DiameterBounds:
    delta1: float
    delta2: DiameterEstimate
    lower: float
    upper: float


@dataclass(frozen=True)
class LeadingPair:
    eigenvalue: complex
    vector: ComplexVector
    residual: float


@dataclass(frozen=True)
class PowerIterationResult:
    eigenvalue: complex
    vector: ComplexVector
    iterations: int
    error_bound: float
    residual: float
    step_deltas: List[float] = field(default_factory=list)
    error_bounds: List[float] = field(default_factory=list)
    iterates: List[ComplexVector] = field(default_factory=list)


@dataclass(frozen=True)
class OracleCheck:
    ratio: float
    passed: bool
    eigenvalues: ComplexVector


@dataclass(frozen=True)
class GapCertificate:
    condition: ConditionReport
    aperture: float
    diameter: Optional[DiameterBounds] = None
    theta_sigma: Optional[ThetaSigma] = None
    delta_up: Optional[float] = None
    contraction: Optional[float] = None
    leading: Optional[LeadingPair] = None
    oracle: Optional[OracleCheck] = None

    @property
    def certified(self) -> bool:
        return self.condition.holds and self.contraction is not None


def _tuples(n: int) -> Iterator[Violation]:
    """Cross tuples (k<l, p<q) first, then the rest, each in lexicographic order"""
    cross = [(k, l, p, q) for k, l in itertools.combinations(range(n), 2) for p, q in itertools.combinations(range(n), 2)]
    cross_set = set(cross)
    yield from cross
    for t in itertools.product(range(n), repeat=4):
        if t not in cross_set:
            yield t


def _condition_terms(A: ComplexMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """
    Re(ā_kp a_lq + ā_kq a_lp) and |a_kp a_lq − a_kq a_lp| on the full n⁴ grid,
    indexed [k, l, p, q]
    """
    a_kp = A[:, None, :, None]
    a_lq = A[None, :, None, :]
    a_kq = A[:, None, None, :]
    a_lp = A[None, :, :, None]
    real_part = (np.conj(a_kp) * a_lq + np.conj(a_kq) * a_lp).real
    cross = np.abs(a_kp * a_lq - a_kq * a_lp)
    return real_part, cross


class GapCertificationService:
    """Certification pipeline for the cone ℂ₊ⁿ"""

    @staticmethod
    def check_condition(A: ArrayLike) -> ConditionReport:
        """
        Test Re(ā_kp a_lq + ā_kq a_lp) > |a_kp a_lq − a_kq a_lp| for all k, l, p, q

        Args:
            A: Square complex matrix

        Returns:
            ConditionReport with the minimal margin and the first violating tuple
            (1-based), scanning two-row two-column tuples before degenerate ones
        """
        A = as_matrix(A)
        real_part, cross = _condition_terms(A)
        margins = real_part - cross
        margin = float(np.min(margins))
        if margin > 0:
            return ConditionReport(holds=True, margin=margin)

        for t in _tuples(A.shape[0]):
            if margins[t] <= 0:
                violation = tuple(i + 1 for i in t)
                logger.debug(f"Cone condition fails at {violation} with margin {float(margins[t])}")
                return ConditionReport(holds=False, margin=margin, first_violation=violation)
        return ConditionReport(holds=False, margin=margin)

    def _require_condition(self, A: ComplexMatrix) -> ConditionReport:
        report = self.check_condition(A)
        if not report.holds:
            raise ConditionFailedError(
                f"matrix does not map the cone into its interior (violation at {report.first_violation})",
                violation=report.first_violation,
            )
        return report

    def theta_sigma(self, A: ArrayLike) -> Optional[ThetaSigma]:
        """
        θ = max |a_kp a_lq − a_kq a_lp| / Re(ā_kp a_lq + ā_kq a_lp),
        σ = sqrt(max |a_kp a_lq| / |a_kq a_lp|), bound 8·log((1+θ)/(1−θ)) + 2·log σ

        Returns:
            ThetaSigma, or None when the condition fails or an entry is zero
        """
        A = as_matrix(A)
        if not self.check_condition(A).holds:
            return None
        if np.any(A == 0):
            logger.debug("theta_sigma: zero entry, sigma undefined")
            return None

        real_part, cross = _condition_terms(A)
        theta = float(np.max(cross / real_part))
        a_kp = np.abs(A)[:, None, :, None]
        a_lq = np.abs(A)[None, :, None, :]
        a_kq = np.abs(A)[:, None, None, :]
        a_lp = np.abs(A)[None, :, :, None]
        sigma = float(math.sqrt(np.max((a_kp * a_lq) / (a_kq * a_lp))))
        bound = 8.0 * math.log((1.0 + theta) / (1.0 - theta)) + 2.0 * math.log(sigma)
        return ThetaSigma(theta=theta, sigma=sigma, diam_bound=bound)

    def diameter_bounds(self, A: ArrayLike, samples: Optional[int] = None) -> DiameterBounds:
        """
        max(Δ₁, Δ₂) ≤ δ-diam(A(ℂ₊ⁿ∖0)) ≤ Δ₁ + 2Δ₂

        Args:
            A: Matrix satisfying the cone condition
            samples: Angular grid size for the half-plane diameters

        Returns:
            DiameterBounds with Δ₁ over row pairs and Δ₂ as (lower, upper)
        """
        A = as_matrix(A)
        self._require_condition(A)
        samples = samples or settings.SAMPLES
        n = A.shape[0]

        delta1 = 0.0
        delta2_lower = 0.0
        delta2_upper = 0.0
        for k in range(n):
            for l in range(k + 1, n):
                delta1 = max(delta1, delta(A[k], A[l]))
                estimate = rhp_union_diameter(e_region(A[k], A[l]).disks, samples)
                delta2_lower = max(delta2_lower, estimate.lower)
                delta2_upper = max(delta2_upper, estimate.upper)

        delta2 = DiameterEstimate(lower=delta2_lower, upper=delta2_upper)
        return DiameterBounds(
            delta1=delta1,
            delta2=delta2,
            lower=max(delta1, delta2.lower),
            upper=delta1 + 2.0 * delta2.upper,
        )

    @staticmethod
    def contraction_coefficient(diameter: float) -> float:
        """tanh(Δ/4)"""
        if diameter < 0:
            raise ValueError(f"diameter must be ≥ 0, got {diameter}")
        return float(math.tanh(diameter / 4.0))

    @staticmethod
    def composed_coefficient(coefficients: Iterable[float]) -> float:
        """c(T₁…T_k) ≤ Π c(T_i)"""
        return float(math.prod(coefficients))

    def delta_upper(self, A: ArrayLike, samples: Optional[int] = None) -> float:
        """min of the row-pair sandwich upper bound and the θσ bound"""
        A = as_matrix(A)
        upper = self.diameter_bounds(A, samples).upper
        ts = self.theta_sigma(A)
        if ts is not None:
            upper = min(upper, ts.diam_bound)
        return upper

    def power_iterate(
        self,
        A: ArrayLike,
        x0: Optional[ArrayLike] = None,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
        contraction: Optional[float] = None,
        residual_tol: Optional[float] = None,
    ) -> PowerIterationResult:
        """
        Power iteration x_{m+1} = A x_m / ‖A x_m‖, phase-aligned to x_m

        Args:
            A: Matrix satisfying the cone condition
            x0: Starting point in ℂ₊ⁿ∖0 (default (1,…,1))
            tol: Stop once δ(x_m, x_{m+1}) ≤ tol ...
            max_iter: Iteration cap
            contraction: Certified contraction coefficient c; computed when omitted
            residual_tol: ... and ‖Ax − λx‖/‖x‖ ≤ residual_tol, or the residual
                no longer decreases

        Returns:
            PowerIterationResult; error_bound = K·c·δ(x_{m−1}, x_m)/(1−c)
        """
        A = as_matrix(A)
        self._require_condition(A)
        n = A.shape[0]
        tol = settings.TOLERANCE if tol is None else tol
        max_iter = settings.MAX_ITER if max_iter is None else max_iter
        residual_tol = settings.RESIDUAL_TOL if residual_tol is None else residual_tol
        x = np.ones(n, dtype=np.complex128) if x0 is None else as_vector(x0)
        if x.size != n:
            raise DimensionError(f"x0 has length {x.size}, matrix is {n}x{n}")
        if not np.any(x) or classify(x) is ConeClass.OUTSIDE:
            raise NotInConeError("x0 must be a non-zero point of the cone")
        if contraction is None:
            contraction = self.contraction_coefficient(self.delta_upper(A))

        K = aperture_witness(n).K
        m0 = aperture_witness(n).m
        x = x / np.linalg.norm(x)
        step_deltas: List[float] = []
        error_bounds: List[float] = []
        iterates: List[ComplexVector] = [x]
        previous_residual = INF

        for iteration in range(1, max_iter + 1):
            image = A @ x
            nxt = image / np.linalg.norm(image)
            step = delta(x, nxt)
            if math.isfinite(step):
                nxt = align(x, nxt, delta_value=step).alpha * nxt
            step_deltas.append(step)
            if math.isfinite(step) and contraction < 1.0:
                error_bounds.append(K * contraction * step / (1.0 - contraction))
            else:
                error_bounds.append(INF)
            x = nxt
            iterates.append(x)
            logger.debug(f"power iteration {iteration}: delta={step!r}")

            if step > tol:
                continue
            eigenvalue = complex(np.dot(m0, A @ x) / np.dot(m0, x))
            residual = float(np.linalg.norm(A @ x - eigenvalue * x) / np.linalg.norm(x))
            # Past the δ stop, polish until the residual is small or stalls at rounding level
            if residual <= residual_tol or residual >= previous_residual:
                return PowerIterationResult(
                    eigenvalue=eigenvalue,
                    vector=x,
                    iterations=iteration,
                    error_bound=error_bounds[-1],
                    residual=residual,
                    step_deltas=step_deltas,
                    error_bounds=error_bounds,
                    iterates=iterates,
                )
            previous_residual = residual

        raise ConvergenceError(
            f"power iteration did not reach tol={tol} (residual {residual_tol}) in {max_iter} iterations"
        )

    def sampled_delta_diameter(self, A: ArrayLike, samples: int, rng: np.random.Generator) -> float:
        """
        Monte-Carlo lower estimate of the δ-diameter of A(ℂ₊ⁿ∖0)

        Always includes basis-vector pairs and, for every row pair, the two cone
        inputs where the ratio ⟨λ_l,x⟩/⟨λ_k,x⟩ reaches its extreme moduli; those
        pairs realize Δ₁. Then `samples` random interior pairs.
        """
        A = as_matrix(A)
        n = A.shape[0]
        best = 0.0
        basis = np.eye(n, dtype=np.complex128)
        for k in range(n):
            for l in range(k + 1, n):
                best = max(best, delta(A @ basis[k], A @ basis[l]))
                x_low, x_high = _extremal_ratio_inputs(A, k, l)
                best = max(best, delta(A @ x_low, A @ x_high))
        for _ in range(samples):
            x = random_cone_vector(n, rng)
            y = random_cone_vector(n, rng)
            best = max(best, delta(A @ x, A @ y))
        return best

    def certify(
        self,
        A: ArrayLike,
        samples: Optional[int] = None,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
        oracle: Optional[bool] = None,
    ) -> GapCertificate:
        """
        Full certificate: condition, diameter bounds, c = tanh(Δ_up/4), leading pair

        Args:
            A: Square complex matrix
            samples: Grid size for the half-plane diameters
            tol: Power-iteration tolerance
            max_iter: Power-iteration cap
            oracle: Cross-check |λ₂|/|λ₁| ≤ c with the eigenvalue oracle

        Returns:
            GapCertificate; when the condition fails only the condition is filled in
        """
        A = as_matrix(A)
        n = A.shape[0]
        oracle = settings.oracle_enabled if oracle is None else oracle
        K = aperture_witness(n).K

        condition = self.check_condition(A)
        if not condition.holds:
            logger.info(f"Certification refused: condition fails at {condition.first_violation}")
            return GapCertificate(condition=condition, aperture=K)

        diameter = self.diameter_bounds(A, samples)
        ts = self.theta_sigma(A)
        delta_up = diameter.upper if ts is None else min(diameter.upper, ts.diam_bound)
        c = self.contraction_coefficient(delta_up)

        iteration = self.power_iterate(A, tol=tol, max_iter=max_iter, contraction=c)
        leading = LeadingPair(
            eigenvalue=iteration.eigenvalue,
            vector=iteration.vector,
            residual=iteration.residual,
        )

        check = None
        if oracle:
            if n > numerics.ORACLE_MAX_DIM:
                logger.warning(f"Eigenvalue oracle skipped: n={n} exceeds {numerics.ORACLE_MAX_DIM}")
            else:
                spectrum = numerics.eigenvalues(A)
                ratio = float(abs(spectrum[1]) / abs(spectrum[0])) if n > 1 else 0.0
                passed = ratio <= c + 1e-9
                if not passed:
                    logger.error(f"Oracle ratio {ratio} exceeds certified contraction {c}")
                check = OracleCheck(ratio=ratio, passed=passed, eigenvalues=spectrum)

        logger.info(f"Certified n={n}: delta_up={delta_up:.6g}, c={c:.6g}")
        return GapCertificate(
            condition=condition,
            aperture=K,
            diameter=diameter,
            theta_sigma=ts,
            delta_up=delta_up,
            contraction=c,
            leading=leading,
            oracle=check,
        )


def _extremal_ratio_inputs(A: ComplexMatrix, k: int, l: int) -> Tuple[ComplexVector, ComplexVector]:
    """
    Cone vectors x minimizing and maximizing |⟨λ_l,x⟩/⟨λ_k,x⟩|

    On x = w·e_p + e_q the ratio is a Möbius map of w whose right-half-plane image
    is the disk D_pq of E(λ_k, λ_l); extreme moduli sit on its boundary circle,
    pulled back to w on the imaginary axis (or ∞, giving e_p).
    """
    n = A.shape[0]
    basis = np.eye(n, dtype=np.complex128)
    low: Tuple[float, ComplexVector] = (INF, basis[0])
    high: Tuple[float, ComplexVector] = (-INF, basis[0])

    def consider(value: float, x: ComplexVector) -> None:
        nonlocal low, high
        if value < low[0]:
            low = (value, x)
        if value > high[0]:
            high = (value, x)

    for p in range(n):
        consider(abs(A[l, p] / A[k, p]), basis[p])
        for q in range(p + 1, n):
            try:
                phi = MoebiusMap(a=A[l, p], b=A[l, q], c=A[k, p], d=A[k, q])
            except GeometryError:
                continue
            image = moebius_image_rhp(phi)
            if not isinstance(image, Disk) or image.radius == 0 or image.center == 0:
                continue
            direction = image.center / abs(image.center)
            for z in (image.center - image.radius * direction, image.center + image.radius * direction):
                w = phi.inverse()(z)
                x = basis[p] if not np.isfinite(w) else w * basis[p] + basis[q]
                consider(abs(z), x)
    return low[1], high[1]


def random_cone_vector(n: int, rng: np.random.Generator, spread: float = 0.999) -> ComplexVector:
    """
    Random interior point of ℂ₊ⁿ: arguments within an arc shorter than π/2

    Args:
        n: Dimension
        rng: numpy Generator
        spread: Fraction of π/2 the arguments may span
    """
    phases = rng.uniform(0.0, spread * math.pi / 2.0, size=n) + rng.uniform(0.0, 2.0 * math.pi)
    moduli = rng.uniform(0.05, 1.0, size=n)
    return moduli * np.exp(1j * phases)


def random_condition_matrix(n: int, rng: np.random.Generator, eta: float = 0.5, max_tries: int = 60) -> ComplexMatrix:
    """
    Positive matrix with entries in [1,2] plus a complex perturbation of size η,
    halving η until the cone condition holds
    """
    for _ in range(max_tries):
        base = rng.uniform(1.0, 2.0, size=(n, n))
        perturbation = eta * rng.uniform(-1.0, 1.0, size=(n, n)) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, size=(n, n)))
        A = base + perturbation
        if GapCertificationService.check_condition(A).holds:
            return A.astype(np.complex128)
        eta /= 2.0
    raise ConvergenceError(f"no condition-passing matrix found for n={n}")


def rugh_condition(A: ArrayLike) -> bool:
    """Rugh's sufficient condition: max |Im(a_ij·conj a_kl)| < min Re(a_ij·conj a_kl)"""
    A = as_matrix(A).ravel()
    products = A[:, None] * np.conj(A)[None, :]
    return bool(np.max(np.abs(products.imag)) < np.min(products.real))


# Global instance
gap_certifier = GapCertificationService()
