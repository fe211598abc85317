"""
Module de validation des arguments numériques.

Ce module contient des fonctions utilitaires pour valider les paramètres
passés aux opérations (tailles de grille, tolérances, constantes des bornes).
Chaque fonction lève ValidationError avec un message explicite.
"""
import math
from typing import Any

from .errors import ValidationError


def validate_finite(name: str, value: Any) -> float:
    """
    Vérifie qu'une valeur est un réel fini.

    Args:
        name: Nom du paramètre pour le message d'erreur
        value: Valeur à valider

    Returns:
        La valeur convertie en float

    Raises:
        ValidationError: Si la valeur n'est pas un nombre fini
    """
    try:
        number = float(value)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{name} doit être un nombre réel. Reçu : {value!r}") from e
    if not math.isfinite(number):
        raise ValidationError(f"{name} doit être fini. Reçu : {value!r}")
    return number


def validate_positive(name: str, value: Any) -> float:
    """
    Vérifie qu'une valeur est un réel strictement positif.

    Raises:
        ValidationError: Si la valeur n'est pas strictement positive
    """
    number = validate_finite(name, value)
    if number <= 0:
        raise ValidationError(f"{name} doit être strictement positif. Reçu : {value!r}")
    return number


def validate_open_unit(name: str, value: Any) -> float:
    """Vérifie qu'une valeur appartient à l'intervalle ouvert (0, 1)."""
    number = validate_finite(name, value)
    if not 0 < number < 1:
        raise ValidationError(f"{name} doit appartenir à (0, 1). Reçu : {value!r}")
    return number


def validate_grid_size(name: str, value: Any, minimum: int = 2) -> int:
    """
    Vérifie qu'une taille de grille est un entier suffisant.

    Args:
        name: Nom du paramètre
        value: Taille proposée
        minimum: Taille minimale acceptée

    Raises:
        ValidationError: Si la taille n'est pas un entier >= minimum
    """
    if isinstance(value, bool) or not isinstance(value, (int,)) and not (
        isinstance(value, float) and value.is_integer()
    ):
        raise ValidationError(f"{name} doit être un entier. Reçu : {value!r}")
    size = int(value)
    if size < minimum:
        raise ValidationError(f"{name} doit être >= {minimum}. Reçu : {size}")
    return size


__all__ = [
    'validate_finite',
    'validate_positive',
    'validate_open_unit',
    'validate_grid_size',
]
