"""
Generators Module
=================

Intervalles, générateurs f ∈ F(U), familles prédéfinies et expressions.
"""

from .interval import Interval, UNIT_INTERVAL
from .base import (
    Generator,
    arrow_pratt,
    arrow_pratt_function,
    arrow_pratt_difference,
    affine_combination,
    affine_normalize,
    check_monotone,
    common_scan_bounds,
    reparametrize,
    restrict,
)
from .builtins import BuiltinFamily, make_builtin, parse_family_spec, generator_from_spec
from .dual import Dual2
from .expression import parse_expression, parse_generator

__all__ = [
    'Interval',
    'UNIT_INTERVAL',
    'Generator',
    'arrow_pratt',
    'arrow_pratt_function',
    'arrow_pratt_difference',
    'affine_combination',
    'affine_normalize',
    'check_monotone',
    'common_scan_bounds',
    'reparametrize',
    'restrict',
    'BuiltinFamily',
    'make_builtin',
    'parse_family_spec',
    'generator_from_spec',
    'Dual2',
    'parse_expression',
    'parse_generator',
]
