"""
Modèles de résultats des opérations numériques.

Chaque modèle impose les invariants de sa grandeur à la construction.
"""
import math
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, root_validator, validator

from ..generators.interval import Interval
from ..utils.errors import PropertyViolation


def _finite_or_none(v):
    if v is not None and not math.isfinite(v):
        return None
    return v


class StarNormResult(BaseModel):
    """‖u‖∗ avec le couple (x, y) qui réalise sup |∫ₓʸ u|."""
    value: float = Field(..., ge=0)
    argmax_pair: Tuple[float, float]
    method: str = "oscillation"
    cross_check: Optional[float] = Field(
        None, description="Évaluation indépendante (quadrature) sur demande"
    )

    @validator('method')
    def check_method(cls, v):
        if v not in ('oscillation', 'grid'):
            raise ValueError(f"Unknown star norm method '{v}'")
        return v


class RhoEstimate(BaseModel):
    """Distance de Cargo-Shisha mesurée (estimation inférieure du sup)."""
    value: float = Field(..., ge=0)
    arg: Tuple[float, float, float] = Field(..., description="(x, z, theta)")
    refinement_gap: float = Field(..., ge=0)
    evaluations: int = Field(..., ge=0)
    on_boundary: bool = False

    @property
    def x(self) -> float:
        return self.arg[0]

    @property
    def z(self) -> float:
        return self.arg[1]

    @property
    def theta(self) -> float:
        return self.arg[2]


class RestrictionCheck(BaseModel):
    """ρ sur un sous-intervalle V comparée à ρ sur U."""
    holds: bool
    value_u: float
    value_v: float
    tolerance: float


class EstimConstants(BaseModel):
    """Constantes C0, y0, y1 de l'estimation inférieure explicite."""
    C0: float = Field(..., gt=0)
    y0: float = Field(..., gt=0)
    y1: float = Field(..., gt=0)
    residual: float = Field(0.0, description="|condition de stationnarité| en C0")

    class Config:
        frozen = True


class SeparationCertificate(BaseModel):
    """
    Sous-intervalle V à (φ, K, δ)-séparation vérifiée.

    residuals contient les pires marges sur la grille de vérification:
    K - sup|A f|, K - sup|A g| et inf|A f - A g| - δ.
    """
    V: Interval
    phi: float = Field(..., gt=0)
    K: float = Field(..., gt=0)
    delta: float = Field(..., gt=0)
    residuals: Dict[str, float] = Field(default_factory=dict)

    class Config:
        frozen = True

    @root_validator(skip_on_failure=True)
    def check_certificate(cls, values):
        V, phi, K, delta = values['V'], values['phi'], values['K'], values['delta']
        if phi != V.length():
            raise ValueError(f"phi must equal |V| = {V.length():.17g}, got {phi:.17g}")
        if delta > 2 * K:
            raise ValueError(f"delta must not exceed 2K, got delta={delta}, K={K}")
        for name, margin in values['residuals'].items():
            if margin < -1e-9:
                raise ValueError(f"Separation margin {name} is negative: {margin}")
        return values

    @classmethod
    def from_parameters(cls, phi: float, K: float, delta: float, lo: float = 0.0) -> "SeparationCertificate":
        """Certificat sur V = [lo, lo + phi] aux constantes données (sans vérification de grille)."""
        V = Interval(lo, lo + phi)
        return cls(V=V, phi=V.length(), K=K, delta=delta)


class BoundEntry(BaseModel):
    """Une borne inférieure ou supérieure d'un rapport."""
    name: str
    kind: str = Field(..., description="lower, upper ou advisory")
    value: Optional[float] = None
    applicable: bool = True
    params: Dict[str, Any] = Field(default_factory=dict)
    reason: Optional[str] = None

    _finite_value = validator('value', allow_reuse=True)(_finite_or_none)

    @validator('kind')
    def check_kind(cls, v):
        if v not in ('lower', 'upper', 'advisory'):
            raise ValueError(f"Unknown bound kind '{v}'")
        return v

    @root_validator(skip_on_failure=True)
    def check_value(cls, values):
        if values['applicable'] and values['kind'] != 'advisory':
            value = values.get('value')
            if value is None:
                raise ValueError(f"Applicable bound {values['name']} needs a finite value")
            if value < 0:
                raise ValueError(f"Bound {values['name']} is negative: {value}")
        return values

    @classmethod
    def not_applicable(cls, name: str, kind: str, reason: str, **params) -> "BoundEntry":
        return cls(name=name, kind=kind, value=None, applicable=False, params=params, reason=reason)


class BoundReport(BaseModel):
    """Toutes les bornes d'un couple de générateurs sur U avec ρ mesurée."""
    pair: Tuple[str, str]
    interval: Interval
    K: float = Field(..., ge=0)
    epsilon: float = Field(..., ge=0)
    rho: RhoEstimate
    bounds: List[BoundEntry] = Field(default_factory=list)

    def entry(self, name: str) -> BoundEntry:
        for bound in self.bounds:
            if bound.name == name:
                return bound
        raise KeyError(name)

    def lower_values(self) -> Dict[str, float]:
        return {b.name: b.value for b in self.bounds if b.kind == 'lower' and b.applicable}

    def upper_values(self) -> Dict[str, float]:
        return {b.name: b.value for b in self.bounds if b.kind == 'upper' and b.applicable}

    def sandwich_violations(self, slack: float = 1e-9) -> List[str]:
        """Bornes qui contredisent max(inférieures) ≤ ρ ≤ min(supérieures)."""
        problems = []
        rho = self.rho.value
        for name, value in self.lower_values().items():
            if value > rho + slack:
                problems.append(f"lower bound {name}={value:.17g} exceeds measured rho={rho:.17g}")
        for name, value in self.upper_values().items():
            if rho > value + slack:
                problems.append(f"measured rho={rho:.17g} exceeds upper bound {name}={value:.17g}")
        return problems

    def check_sandwich(self, slack: float = 1e-9) -> None:
        """
        Raises:
            PropertyViolation: Si une borne inférieure dépasse ρ ou si ρ dépasse une borne supérieure
        """
        problems = self.sandwich_violations(slack)
        if problems:
            raise PropertyViolation(
                f"Sandwich check failed for {self.pair[0]} / {self.pair[1]} on {self.interval}: "
                + "; ".join(problems)
            )


class ComparisonEvidence(BaseModel):
    """Indices de grille pour la comparaison A[f] ≥ A[g]."""
    ap_ordered: bool = Field(..., description="A f > A g en chaque point de grille")
    convex: bool = Field(..., description="sgn(f′)·f∘g⁻¹ strictement convexe sur la grille")
    min_ap_gap: float
    min_second_difference: float

    @property
    def holds(self) -> bool:
        return self.ap_ordered and self.convex


class PalesEvidence(BaseModel):
    """Test de grille des rapports de triplets (indicatif, pas une preuve)."""
    holds: bool
    vacuous: bool = False
    max_difference: float = 0.0
    triples: int = 0
    alpha: float
    C: float


class ConvergencePoint(BaseModel):
    """ε_n et ρ_n mesurée avec les bornes qui l'encadrent."""
    label: str
    epsilon: float = Field(..., ge=0)
    rho: float = Field(..., ge=0)
    lower_main: float = Field(..., ge=0)
    upper_star_norm: Optional[float] = None

    _finite_upper = validator('upper_star_norm', allow_reuse=True)(_finite_or_none)


class SuiteResult(BaseModel):
    """Résultat d'une suite de vérification."""
    name: str
    checks: int = Field(0, ge=0)
    failures: List[str] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures


class TableRow(BaseModel):
    """Une ligne du tableau de l'exemple: valeur publiée contre valeur calculée."""
    name: str
    description: str
    published: float
    computed: Optional[float] = None
    check: Tuple[Any, ...]
    within: bool = False

    _finite_computed = validator('computed', allow_reuse=True)(_finite_or_none)


__all__ = [
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
]
