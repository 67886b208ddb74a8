"""
Core modules for the cone certification toolkit
"""
from .config import settings, Settings
from .exceptions import (
    ConeCertError, DimensionError, ZeroVectorError, NotInConeError, GeometryError,
    ConditionFailedError, ConvergenceError, InputFileError
)
from .schemas import (
    ComplexNumber, MatrixFile, VectorsFile, ConeSpecFile, RunConfig,
    ConditionReportResponse, ThetaSigmaResponse, DiameterEstimateResponse, DiameterBoundsResponse,
    LeadingPairResponse, OracleResponse, CertificateResponse,
    DeltaMatrixResponse, DiameterResponse, PowerResponse,
    DcIntervalResponse, DtildeResponse, InequalityChecks, ComparisonResponse,
    RegionPartResponse, RegionResponse, RemarkRowResponse, RemarkDemoResponse,
    INF_TOKEN
)
from .utils import detect_format, load_matrix, load_vectors, load_cone_spec, parse_vector, emit
from .logging_config import setup_logging, _get_log_level

__all__ = [
    'settings',
    'Settings',
    'ConeCertError',
    'DimensionError',
    'ZeroVectorError',
    'NotInConeError',
    'GeometryError',
    'ConditionFailedError',
    'ConvergenceError',
    'InputFileError',
    'ComplexNumber',
    'MatrixFile',
    'VectorsFile',
    'ConeSpecFile',
    'RunConfig',
    'ConditionReportResponse',
    'ThetaSigmaResponse',
    'DiameterEstimateResponse',
    'DiameterBoundsResponse',
    'LeadingPairResponse',
    'OracleResponse',
    'CertificateResponse',
    'DeltaMatrixResponse',
    'DiameterResponse',
    'PowerResponse',
    'DcIntervalResponse',
    'DtildeResponse',
    'InequalityChecks',
    'ComparisonResponse',
    'RegionPartResponse',
    'RegionResponse',
    'RemarkRowResponse',
    'RemarkDemoResponse',
    'INF_TOKEN',
    'detect_format',
    'load_matrix',
    'load_vectors',
    'load_cone_spec',
    'parse_vector',
    'emit',
    'setup_logging',
    '_get_log_level',
]
