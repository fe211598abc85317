"""
Utils Module
============

Erreurs, validateurs et primitives d'optimisation numérique.
"""

from .errors import (
    QAMError,
    QAMInputError,
    ValidationError,
    InvalidDomainError,
    DomainError,
    ExpressionParseError,
    NotAGeneratorError,
    NumericError,
    PropertyViolation,
    handle_numeric_errors,
)
from .optimize import (
    golden_section_search,
    oscillation,
    sup_abs,
    inf_abs,
    grid_argmax,
    vectorized_bisection,
)

__all__ = [
    'QAMError',
    'QAMInputError',
    'ValidationError',
    'InvalidDomainError',
    'DomainError',
    'ExpressionParseError',
    'NotAGeneratorError',
    'NumericError',
    'PropertyViolation',
    'handle_numeric_errors',
    'golden_section_search',
    'oscillation',
    'sup_abs',
    'inf_abs',
    'grid_argmax',
    'vectorized_bisection',
]
