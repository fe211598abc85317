"""
Hiérarchie d'exceptions du calcul numérique.

Toutes les erreurs levées par le package dérivent de QAMError. Les erreurs
d'entrée (QAMInputError) correspondent au code de sortie 2 du CLI, les
violations de propriétés vérifiées au code de sortie 1.
"""
import logging
from functools import wraps
from typing import Any, Optional, Tuple

logger = logging.getLogger(__name__)


class QAMError(Exception):
    """Base exception for all quasi-arithmetic mean errors."""
    pass


class QAMInputError(QAMError):
    """Raised when user supplied data cannot be used."""
    pass


class ValidationError(QAMInputError, ValueError):
    """Raised when argument validation fails."""
    pass


class InvalidDomainError(QAMInputError):
    """Raised when a generator family is incompatible with the requested interval."""
    pass


class DomainError(QAMInputError):
    """Raised when a value lies outside the domain of a generator."""
    pass


class ExpressionParseError(QAMInputError):
    """Erreur de syntaxe dans une expression de générateur."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (position {position})")


class NotAGeneratorError(QAMInputError):
    """Raised when a function is not strictly monotone with a nowhere vanishing derivative."""
    pass


class NumericError(QAMError):
    """Raised when an objective evaluates to a non-finite value."""

    def __init__(self, message: str, point: Optional[Tuple[Any, ...]] = None):
        self.point = point
        if point is not None:
            message = f"{message} at {point}"
        super().__init__(message)


class PropertyViolation(QAMError):
    """Raised when a verified analytic property does not hold."""
    pass


def handle_numeric_errors(func):
    """Decorator to turn floating point failures into NumericError with consistent logging."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except QAMError:
            raise
        except (FloatingPointError, OverflowError, ZeroDivisionError) as e:
            logger.error(f"Numeric failure in {func.__name__}: {str(e)}", exc_info=True)
            raise NumericError(f"Numeric failure in {func.__name__}: {str(e)}") from e
    return wrapper


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
]
