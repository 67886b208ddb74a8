"""
Pydantic schemas for input files and command output
Extended reals travel as the string "inf"
"""
import math
from typing import Annotated, Any, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, BeforeValidator, Field, PlainSerializer, field_validator, model_validator

from .config import settings


INF_TOKEN = "inf"

ALLOWED_COMPARISONS = ["certified", "refuted", "indeterminate", "infinite"]
COMPARISON_PATTERN = f"^({'|'.join(ALLOWED_COMPARISONS)})$"


def _parse_extended(value: Any) -> Any:
    """Accept the "inf" token; reject NaN in any spelling"""
    if isinstance(value, str):
        token = value.strip().lower()
        if token in (INF_TOKEN, "+inf", "infinity"):
            return math.inf
        if token == "nan":
            raise ValueError("NaN is not an extended real")
    if isinstance(value, float) and math.isnan(value):
        raise ValueError("NaN is not an extended real")
    return value


def _dump_extended(value: float) -> Union[float, str]:
    if math.isinf(value) and value > 0:
        return INF_TOKEN
    return float(value)


ExtendedReal = Annotated[
    float,
    BeforeValidator(_parse_extended),
    PlainSerializer(_dump_extended, return_type=Union[float, str]),
]


def _to_list(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


class ComplexNumber(BaseModel):
    """A complex entry {"re": r, "im": i}; bare numbers and [re, im] pairs are accepted too"""
    re: float
    im: float = 0.0

    @model_validator(mode="before")
    @classmethod
    def coerce_number(cls, data: Any) -> Any:
        if isinstance(data, bool):
            raise ValueError("booleans are not numbers")
        if isinstance(data, (int, float, complex, np.number)):
            z = complex(data)
            return {"re": z.real, "im": z.imag}
        if isinstance(data, (list, tuple)) and len(data) == 2:
            return {"re": data[0], "im": data[1]}
        return data

    @field_validator("re", "im")
    @classmethod
    def validate_finite(cls, v):
        if not math.isfinite(v):
            raise ValueError("entries must be finite")
        return v

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


ComplexList = Annotated[List[ComplexNumber], BeforeValidator(_to_list)]


def _to_array(rows: List[List[ComplexNumber]]) -> np.ndarray:
    return np.array([[z.to_complex() for z in row] for row in rows], dtype=np.complex128)


class MatrixFile(BaseModel):
    """Schema for a matrix file: {"matrix": [[{"re":..,"im":..}, ...], ...]}"""
    matrix: List[ComplexList] = Field(..., min_length=1)

    @model_validator(mode="after")
    def validate_square(self):
        n = len(self.matrix)
        for index, row in enumerate(self.matrix):
            if len(row) != n:
                raise ValueError(f"matrix must be square: row {index + 1} has {len(row)} entries, expected {n}")
        return self

    def to_array(self) -> np.ndarray:
        return _to_array(self.matrix)


class VectorsFile(BaseModel):
    """Schema for a list of vectors of one dimension"""
    vectors: List[ComplexList] = Field(..., min_length=1)

    @model_validator(mode="after")
    def validate_lengths(self):
        n = len(self.vectors[0])
        if n == 0:
            raise ValueError("vectors must be non-empty")
        for index, v in enumerate(self.vectors):
            if len(v) != n:
                raise ValueError(f"vector {index + 1} has length {len(v)}, expected {n}")
        return self

    def to_array(self) -> np.ndarray:
        return _to_array(self.vectors)


class ConeSpecFile(BaseModel):
    """Schema for a finite family of functionals defining a cone"""
    functionals: List[ComplexList] = Field(..., min_length=1)

    @model_validator(mode="after")
    def validate_lengths(self):
        n = len(self.functionals[0])
        for index, f in enumerate(self.functionals):
            if len(f) != n or n == 0:
                raise ValueError(f"functional {index + 1} has length {len(f)}, expected {n}")
        return self

    def to_array(self) -> np.ndarray:
        return _to_array(self.functionals)


class RunConfig(BaseModel):
    """Numeric options of a run; defaults come from settings"""
    tolerance: float = Field(default_factory=lambda: settings.TOLERANCE, description="Power-iteration stop threshold")
    samples: int = Field(default_factory=lambda: settings.SAMPLES, description="Grid size / Monte-Carlo pair count")
    max_iter: int = Field(default_factory=lambda: settings.MAX_ITER, description="Power-iteration cap")
    oracle: bool = Field(default_factory=lambda: settings.ORACLE, description="Run the eigenvalue cross-check")
    seed: int = Field(default_factory=lambda: settings.SEED, ge=0, description="Seed for every random sampler")

    @field_validator("tolerance")
    @classmethod
    def validate_tolerance(cls, v):
        if not (v > 0 and math.isfinite(v)):
            raise ValueError("tolerance must be a positive number")
        return v

    @field_validator("samples")
    @classmethod
    def validate_samples(cls, v):
        if v < 16:
            raise ValueError("samples must be at least 16")
        return v

    @field_validator("max_iter")
    @classmethod
    def validate_max_iter(cls, v):
        if v <= 0:
            raise ValueError("max_iter must be positive")
        return v


# Response schemas
class ConditionReportResponse(BaseModel):
    """Schema for the cone condition check"""
    holds: bool
    margin: float
    first_violation: Optional[Tuple[int, int, int, int]] = None

    model_config = {"from_attributes": True}


class ThetaSigmaResponse(BaseModel):
    theta: float
    sigma: float
    diam_bound: ExtendedReal

    model_config = {"from_attributes": True}


class DiameterEstimateResponse(BaseModel):
    lower: ExtendedReal
    upper: ExtendedReal

    model_config = {"from_attributes": True}


class DiameterBoundsResponse(BaseModel):
    """Δ₁, Δ₂ and the sandwich max(Δ₁, Δ₂) ≤ diam ≤ Δ₁ + 2Δ₂"""
    delta1: ExtendedReal
    delta2: DiameterEstimateResponse
    lower: ExtendedReal
    upper: ExtendedReal

    model_config = {"from_attributes": True}

    @field_validator("delta2", mode="before")
    @classmethod
    def unpack_estimate(cls, v):
        if isinstance(v, tuple) and hasattr(v, "_asdict"):
            return v._asdict()
        return v


class LeadingPairResponse(BaseModel):
    eigenvalue: ComplexNumber
    vector: ComplexList
    residual: float

    model_config = {"from_attributes": True}


class OracleResponse(BaseModel):
    """Schema for the |λ₂|/|λ₁| cross-check"""
    ratio: float
    passed: bool
    eigenvalues: ComplexList

    model_config = {"from_attributes": True}


class CertificateResponse(BaseModel):
    """Schema for a spectral gap certificate"""
    certified: bool
    condition: ConditionReportResponse
    aperture: float = Field(..., description="Sectional aperture constant K = √n")
    diameter: Optional[DiameterBoundsResponse] = None
    theta_sigma: Optional[ThetaSigmaResponse] = None
    delta_up: Optional[ExtendedReal] = None
    contraction: Optional[float] = Field(None, description="Certified gap c = tanh(Δ_up/4)")
    leading: Optional[LeadingPairResponse] = None
    oracle: Optional[OracleResponse] = None
    config: RunConfig

    model_config = {"from_attributes": True}


class DeltaMatrixResponse(BaseModel):
    """Pairwise δ values between the input vectors"""
    cone: Literal["cpn", "general"] = "cpn"
    dimension: int
    deltas: List[List[ExtendedReal]]


class DiameterResponse(BaseModel):
    """Schema for the diam command"""
    bounds: DiameterBoundsResponse
    theta_sigma: Optional[ThetaSigmaResponse] = None
    delta_up: ExtendedReal
    sampled: float = Field(..., description="Monte-Carlo lower estimate of the δ-diameter")
    samples: int
    seed: int


class PowerResponse(BaseModel):
    """Schema for a power iteration run"""
    eigenvalue: ComplexNumber
    vector: ComplexList
    iterations: int
    contraction: float
    error_bound: ExtendedReal
    residual: float
    step_deltas: List[ExtendedReal]
    error_bounds: List[ExtendedReal]

    model_config = {"from_attributes": True}


class DcIntervalResponse(BaseModel):
    lower: ExtendedReal
    upper: ExtendedReal
    methods: List[str] = []

    model_config = {"from_attributes": True}


class DtildeResponse(BaseModel):
    lower: ExtendedReal
    upper: ExtendedReal
    chain_index: int = Field(0, description="0 = direct pair, 1 = supplied chain, 2.. = alternatives")

    model_config = {"from_attributes": True}


class InequalityChecks(BaseModel):
    half_delta_ok: bool
    exp_bound_ok: bool
    finiteness_consistent: bool


class ComparisonResponse(BaseModel):
    """Schema for δ against the hyperbolic gauge"""
    delta: ExtendedReal
    dc: DcIntervalResponse
    dtilde: DtildeResponse
    checks: InequalityChecks
    delta_vs_dc: str = Field(..., pattern=COMPARISON_PATTERN)
    notes: List[str] = []


class RegionPartResponse(BaseModel):
    """One part of an E-region; fields depend on `kind`"""
    kind: Literal["disk", "half_plane", "disk_complement"]
    center: Optional[ComplexNumber] = None
    radius: Optional[float] = None
    normal: Optional[ComplexNumber] = None
    offset: Optional[float] = None


class RegionResponse(BaseModel):
    """Plot data for E(x,y)"""
    cone: Literal["cpn", "general"] = "cpn"
    parts: List[RegionPartResponse]
    inf_modulus: ExtendedReal
    sup_modulus: ExtendedReal


class RemarkRowResponse(BaseModel):
    k: int
    x: ComplexList
    y: ComplexList
    z: ComplexList
    delta_xy: ExtendedReal
    dc_xy: DcIntervalResponse
    dtilde_via_z: DtildeResponse
    matrix_theta_sigma: Optional[ThetaSigmaResponse] = None


class RemarkDemoResponse(BaseModel):
    """Schema for demo-remark"""
    alpha: float
    rows: List[RemarkRowResponse]
    dc_upper_nondecreasing: bool
    linear_growth_claim: str = "not certified"
    figure_pair: ComparisonResponse
