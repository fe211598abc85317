"""
Package des bornes analytiques de la distance de Cargo-Shisha.

Modules :
1. Constantes de l'estimation explicite (constants.py)
2. Bornes classiques et test de Páles (classical.py)
3. Bornes par les indices d'Arrow-Pratt (arrow_pratt.py)
4. Séparation (φ, K, δ) (separation.py)
5. Rapport complet (report.py)
"""

from .constants import compute_estim_constants, log_expm1  # noqa: F401
from .classical import (
    normalized,
    cargo_shisha_lower,
    cargo_shisha_upper,
    cargo_shisha_upper_entry,
    pales_sufficient_check,
)  # noqa: F401
from .arrow_pratt import (
    PairMeasures,
    measure_K,
    in_family_k,
    main_bound_ceiling,
    upper_star_norm,
    upper_universal,
    lower_main,
    lower_main_from,
    lower_main_sup,
    lower_estim,
    lower_estim_from,
    lower_main_partitioned,
    convergence_profile,
)  # noqa: F401
from .separation import (
    theta,
    box_alpha,
    box_lower,
    box_lower_simplified,
    box_lower_value,
    box_lower_simplified_value,
    find_separation,
)  # noqa: F401
from .report import full_report  # noqa: F401

__all__ = [
    'compute_estim_constants',
    'log_expm1',
    'normalized',
    'cargo_shisha_lower',
    'cargo_shisha_upper',
    'cargo_shisha_upper_entry',
    'pales_sufficient_check',
    'PairMeasures',
    'measure_K',
    'in_family_k',
    'main_bound_ceiling',
    'upper_star_norm',
    'upper_universal',
    'lower_main',
    'lower_main_from',
    'lower_main_sup',
    'lower_estim',
    'lower_estim_from',
    'lower_main_partitioned',
    'convergence_profile',
    'theta',
    'box_alpha',
    'box_lower',
    'box_lower_simplified',
    'box_lower_value',
    'box_lower_simplified_value',
    'find_separation',
    'full_report',
]
