"""
Familles de générateurs prédéfinies.

- exp(s): e_s(x) = exp(s·x), complétée par e_0(x) = x
- power(s): p_s(x) = x^s, complétée par p_0(x) = ln x, domaine ⊂ (0, ∞)
- identity, log
- expression(text): délègue à l'analyseur d'expressions
"""
import logging
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, root_validator, validator

from ..utils.errors import InvalidDomainError, ValidationError
from .base import Generator
from .interval import Interval

logger = logging.getLogger(__name__)

FAMILY_KINDS = ("power", "exp", "identity", "log", "expression")

# Alias de la syntaxe CLI
SPEC_ALIASES = {
    "exp": "exp",
    "pow": "power",
    "power": "power",
    "id": "identity",
    "identity": "identity",
    "log": "log",
    "ln": "log",
    "expr": "expression",
}


class BuiltinFamily(BaseModel):
    """Famille de générateurs et son paramètre s."""
    kind: str
    s: float = 0.0
    text: Optional[str] = None

    class Config:
        frozen = True

    @validator('kind')
    def check_kind(cls, v):
        if v not in FAMILY_KINDS:
            raise ValueError(f"Unknown generator family '{v}', expected one of {FAMILY_KINDS}")
        return v

    @validator('s')
    def check_parameter(cls, v):
        if not math.isfinite(v):
            raise ValueError(f"Family parameter must be finite, got {v}")
        return v

    @root_validator(skip_on_failure=True)
    def check_expression(cls, values):
        if values['kind'] == 'expression' and not values.get('text'):
            raise ValueError("Expression family requires a text")
        return values


def _identity(domain: Interval, label: str) -> Generator:
    return Generator(
        domain=domain,
        sign=1,
        eval=lambda x: np.asarray(x, dtype=float) * 1.0,
        d1=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        d2=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        inverse=lambda y: np.asarray(y, dtype=float) * 1.0,
        label=label,
        extends_to_closure=True,
        log_abs_d1=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        family=("exp", 0.0),
    )


def _exponential(s: float, domain: Interval, label: str) -> Generator:
    if s == 0:
        return _identity(domain, label)
    log_abs_s = math.log(abs(s))
    return Generator(
        domain=domain,
        sign=1 if s > 0 else -1,
        eval=lambda x: np.exp(s * np.asarray(x, dtype=float)),
        d1=lambda x: s * np.exp(s * np.asarray(x, dtype=float)),
        d2=lambda x: s * s * np.exp(s * np.asarray(x, dtype=float)),
        inverse=lambda y: np.log(np.asarray(y, dtype=float)) / s,
        label=label,
        extends_to_closure=True,
        log_abs_d1=lambda x: log_abs_s + s * np.asarray(x, dtype=float),
        family=("exp", s),
    )


def _check_positive_domain(kind: str, domain: Interval) -> None:
    if domain.lo < 0 or (domain.lo == 0 and domain.lo_closed):
        raise InvalidDomainError(
            f"Family {kind} requires a domain inside (0, ∞), got {domain}"
        )


def _logarithm(domain: Interval, label: str) -> Generator:
    return Generator(
        domain=domain,
        sign=1,
        eval=lambda x: np.log(np.asarray(x, dtype=float)),
        d1=lambda x: 1.0 / np.asarray(x, dtype=float),
        d2=lambda x: -1.0 / np.asarray(x, dtype=float) ** 2,
        inverse=lambda y: np.exp(np.asarray(y, dtype=float)),
        label=label,
        extends_to_closure=domain.lo > 0,
        log_abs_d1=lambda x: -np.log(np.asarray(x, dtype=float)),
        family=("power", 0.0),
    )


def _power(s: float, domain: Interval, label: str) -> Generator:
    if s == 0:
        return _logarithm(domain, label)
    log_abs_s = math.log(abs(s))
    return Generator(
        domain=domain,
        sign=1 if s > 0 else -1,
        eval=lambda x: np.power(np.asarray(x, dtype=float), s),
        d1=lambda x: s * np.power(np.asarray(x, dtype=float), s - 1.0),
        d2=lambda x: s * (s - 1.0) * np.power(np.asarray(x, dtype=float), s - 2.0),
        inverse=lambda y: np.power(np.asarray(y, dtype=float), 1.0 / s),
        label=label,
        extends_to_closure=domain.lo > 0,
        log_abs_d1=lambda x: log_abs_s + (s - 1.0) * np.log(np.asarray(x, dtype=float)),
        family=("power", s),
    )


def make_builtin(kind: BuiltinFamily, domain: Interval) -> Generator:
    """
    Construit un générateur de famille prédéfinie sur domain.

    Args:
        kind: Famille et paramètre
        domain: Domaine U

    Returns:
        Generator à formules fermées (valeur, dérivées, inverse)

    Raises:
        InvalidDomainError: Si le domaine est incompatible avec la famille
    """
    if kind.kind == "exp":
        return _exponential(kind.s, domain, f"exp:{kind.s:g}")
    if kind.kind == "identity":
        return _identity(domain, "id")
    if kind.kind == "power":
        _check_positive_domain("power", domain)
        return _power(kind.s, domain, f"pow:{kind.s:g}")
    if kind.kind == "log":
        _check_positive_domain("log", domain)
        return _logarithm(domain, "log")

    from .expression import parse_generator
    return parse_generator(kind.text, domain)


def parse_family_spec(spec: str) -> BuiltinFamily:
    """
    Analyse une spécification CLI: "exp:s", "pow:s", "id", "log", "expr:<expression>".

    Raises:
        ValidationError: Si la spécification est mal formée
    """
    text = spec.strip()
    name, _, argument = text.partition(":")
    name = name.strip().lower()
    kind = SPEC_ALIASES.get(name)
    if kind is None:
        raise ValidationError(f"Unknown generator specification '{spec}'")

    if kind == "expression":
        if not argument.strip():
            raise ValidationError(f"Empty expression in '{spec}'")
        return BuiltinFamily(kind=kind, text=argument.strip())

    if kind in ("identity", "log"):
        if argument.strip():
            raise ValidationError(f"Family '{name}' takes no parameter, got '{spec}'")
        return BuiltinFamily(kind=kind)

    try:
        parameter = float(argument)
    except ValueError as e:
        raise ValidationError(f"Invalid parameter in generator specification '{spec}'") from e
    if not math.isfinite(parameter):
        raise ValidationError(f"Generator parameter must be finite in '{spec}'")
    return BuiltinFamily(kind=kind, s=parameter)


def generator_from_spec(spec: str, domain: Interval) -> Generator:
    """Spécification CLI → Generator validé."""
    generator = make_builtin(parse_family_spec(spec), domain)
    logger.debug(f"Generator {generator.label} built on {domain}")
    return generator


__all__ = [
    'BuiltinFamily',
    'FAMILY_KINDS',
    'make_builtin',
    'parse_family_spec',
    'generator_from_spec',
]
