"""
Services for the cone certification toolkit
"""
from .contraction import gap_certifier, GapCertificationService
from .gauge_compare import gauge_comparator, GaugeComparisonService

__all__ = [
    'gap_certifier',
    'GapCertificationService',
    'gauge_comparator',
    'GaugeComparisonService',
]
