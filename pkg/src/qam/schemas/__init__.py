"""
Modèles pydantic des échantillons, résultats et exécutions.
"""

from .sample import WeightedSample, make_sample
from .results import (
    StarNormResult,
    RhoEstimate,
    RestrictionCheck,
    EstimConstants,
    SeparationCertificate,
    BoundEntry,
    BoundReport,
    ComparisonEvidence,
    PalesEvidence,
    ConvergencePoint,
    SuiteResult,
    TableRow,
)
from .run import RunConfig

__all__ = [
    'WeightedSample',
    'make_sample',
    'StarNormResult',
    'RhoEstimate',
    'RestrictionCheck',
    'EstimConstants',
    'SeparationCertificate',
    'BoundEntry',
    'BoundReport',
    'ComparisonEvidence',
    'PalesEvidence',
    'ConvergencePoint',
    'SuiteResult',
    'TableRow',
    'RunConfig',
]
