"""
QAM Module
==========

Moyennes quasi-arithmétiques, distance de Cargo-Shisha ρ et ses bornes.

Sous-modules:
- generators: Intervalles, générateurs, familles et expressions
- means: Moyennes A[f](a, w), exp/puissance, comparaison
- norms: ∗-norme et partitionnement
- rho: Estimation numérique de ρ
- bounds: Bornes inférieures et supérieures, séparation, rapport
- verification: Suites de propriétés et tableau de l'exemple numérique
"""

from .generators import Interval, Generator, arrow_pratt, generator_from_spec, make_builtin
from .means import qa_mean, exp_mean, power_mean, two_point_mean
from .norms import star_norm, star_norm_ap, star_norm_ap_diff, partition_subinterval
from .rho import estimate_rho, rho_restricted_monotone
from .schemas import WeightedSample, make_sample

__all__ = [
    'Interval',
    'Generator',
    'arrow_pratt',
    'generator_from_spec',
    'make_builtin',
    'qa_mean',
    'exp_mean',
    'power_mean',
    'two_point_mean',
    'star_norm',
    'star_norm_ap',
    'star_norm_ap_diff',
    'partition_subinterval',
    'estimate_rho',
    'rho_restricted_monotone',
    'WeightedSample',
    'make_sample',
]
