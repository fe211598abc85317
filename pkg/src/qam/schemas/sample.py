"""
Échantillon pondéré (a, w) d'une moyenne quasi-arithmétique.
"""
import math
from typing import List, Optional, Sequence

from pydantic import BaseModel, ValidationError as PydanticValidationError, root_validator

from ..utils.errors import ValidationError

# Tolérance de renormalisation des poids (arrondis des formats texte)
WEIGHT_RENORMALIZE_TOL = 1e-9


class WeightedSample(BaseModel):
    """
    Valeurs a_1..a_n et poids w_1..w_n > 0 de somme 1.

    Les poids absents sont uniformes; une somme à 1e-9 près de 1 est
    renormalisée, au-delà l'échantillon est rejeté.
    """
    values: List[float]
    weights: Optional[List[float]] = None

    class Config:
        frozen = True

    @root_validator(skip_on_failure=True)
    def check_sample(cls, values):
        entries = values['values']
        weights = values.get('weights')
        if len(entries) == 0:
            raise ValueError("At least one value is required")
        for a in entries:
            if not math.isfinite(a):
                raise ValueError(f"Sample values must be finite, got {a}")

        if weights is None:
            weights = [1.0 / len(entries)] * len(entries)
        if len(weights) != len(entries):
            raise ValueError(
                f"values and weights have different lengths ({len(entries)} and {len(weights)})"
            )
        for w in weights:
            if not (math.isfinite(w) and w > 0):
                raise ValueError(f"Weights must be positive, got {w}")
        total = math.fsum(weights)
        if abs(total - 1.0) > WEIGHT_RENORMALIZE_TOL:
            raise ValueError(f"Weights must sum to 1, got {total:.17g}")
        values['weights'] = [w / total for w in weights]
        return values

    def __len__(self) -> int:
        return len(self.values)


def make_sample(values: Sequence[float], weights: Optional[Sequence[float]] = None) -> WeightedSample:
    """
    Construit un WeightedSample en convertissant les erreurs pydantic.

    Raises:
        ValidationError: Si l'échantillon est invalide
    """
    try:
        return WeightedSample(
            values=[float(a) for a in values],
            weights=None if weights is None else [float(w) for w in weights],
        )
    except (PydanticValidationError, TypeError, ValueError) as e:
        raise ValidationError(f"Invalid weighted sample: {e}") from e


__all__ = ['WeightedSample', 'make_sample', 'WEIGHT_RENORMALIZE_TOL']
