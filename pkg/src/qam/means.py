"""
Moyennes quasi-arithmétiques A[f](a, w) = f⁻¹(Σ wᵢ f(aᵢ)).

Les moyennes exponentielles E^s et les moyennes puissances P_s passent par
un log-sum-exp décalé par le maximum (scipy.special.logsumexp), ce qui évite
tout dépassement pour K|U| élevé. Les générateurs des familles exp et power
sont aiguillés vers ces formes stables.
"""
import logging
import math
from typing import Union

import numpy as np
from scipy.special import logsumexp

from .generators.base import Generator, arrow_pratt, common_scan_bounds
from .generators.interval import Interval
from .schemas.results import ComparisonEvidence
from .schemas.sample import WeightedSample
from .utils.errors import DomainError, ValidationError, handle_numeric_errors

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# |s|·(max a - min a) sous lequel le développement à l'ordre 2 est exact en double précision
SMALL_PARAMETER = 1e-8


def _internal(result: float, values: np.ndarray) -> float:
    """Projection sur [min a, max a] (les arrondis ne sortent pas de l'enveloppe)."""
    return float(np.clip(result, values.min(), values.max()))


def _exponential_mean(s: float, values: np.ndarray, weights: np.ndarray) -> float:
    """
    (1/s)·ln(Σ wᵢ e^{s·aᵢ}) centrée sur la moyenne arithmétique c.

    Pour |s|·spread ≤ 1 la somme s'écrit 1 + Σ wᵢ·expm1(s(aᵢ - c)), sans
    annulation quand s → 0; au-delà, log-sum-exp décalé par le maximum.
    """
    center = float(np.dot(weights, values))
    if s == 0:
        return center
    deviations = values - center
    spread = float(values.max() - values.min())
    if abs(s) * spread <= SMALL_PARAMETER:
        return center + 0.5 * s * float(np.dot(weights, deviations * deviations))
    if abs(s) * spread <= 1.0:
        return center + math.log1p(float(np.dot(weights, np.expm1(s * deviations)))) / s
    return center + float(logsumexp(s * deviations, b=weights)) / s


@handle_numeric_errors
def exp_mean(s: float, sample: WeightedSample) -> float:
    """
    Moyenne exponentielle E^s(a, w) = (1/s)·ln(Σ wᵢ e^{s·aᵢ}), moyenne arithmétique pour s = 0.

    Args:
        s: Paramètre réel
        sample: Échantillon pondéré

    Returns:
        La moyenne, dans [min a, max a]
    """
    values = np.asarray(sample.values, dtype=float)
    weights = np.asarray(sample.weights, dtype=float)
    return _internal(_exponential_mean(s, values, weights), values)


@handle_numeric_errors
def power_mean(s: float, sample: WeightedSample) -> float:
    """
    Moyenne puissance (Σ wᵢ aᵢ^s)^{1/s}, moyenne géométrique pour s = 0.

    Calculée comme exp(E^s(ln a, w)), forme exacte de l'identité de conjugaison
    P_s(e^a, w) = exp(E^s(a, w)).

    Raises:
        DomainError: Si une valeur est <= 0
    """
    values = np.asarray(sample.values, dtype=float)
    if np.any(values <= 0):
        raise DomainError(f"Power means need positive values, got min {values.min():.17g}")
    weights = np.asarray(sample.weights, dtype=float)
    log_mean = _exponential_mean(s, np.log(values), weights)
    return _internal(float(np.exp(log_mean)), values)


def _check_in_domain(g: Generator, points: np.ndarray) -> None:
    domain = g.domain
    outside = (points < domain.lo) | (points > domain.hi)
    if np.any(outside):
        point = float(points[outside][0])
        raise DomainError(f"Value {point:.17g} lies outside the domain {domain} of {g.label}")


@handle_numeric_errors
def qa_mean(g: Generator, sample: WeightedSample) -> float:
    """
    Moyenne quasi-arithmétique A[g](a, w) = g⁻¹(Σ wᵢ g(aᵢ)).

    Args:
        g: Générateur
        sample: Échantillon pondéré, valeurs dans l'adhérence du domaine

    Returns:
        La moyenne, dans [min a, max a]

    Raises:
        DomainError: Si une valeur sort du domaine
    """
    values = np.asarray(sample.values, dtype=float)
    _check_in_domain(g, values)
    if values.min() == values.max():
        return float(values[0])

    if g.family is not None:
        kind, s = g.family
        if kind == "exp":
            return exp_mean(s, sample)
        if kind == "power":
            return power_mean(s, sample)

    weights = np.asarray(sample.weights, dtype=float)
    with np.errstate(all="ignore"):
        combined = float(np.dot(weights, g.eval(values)))
        result = float(np.asarray(g.inverse(np.asarray(combined))))
    return _internal(result, values)


def two_point_mean(g: Generator, z: ArrayLike, x: ArrayLike, theta: ArrayLike) -> ArrayLike:
    """
    Moyenne à deux points A[g]_θ(z, x) = g⁻¹(θ·g(z) + (1-θ)·g(x)).

    Vectorisée par diffusion numpy sur (z, x, θ). θ = 0 renvoie x, θ = 1 renvoie z.

    Raises:
        DomainError: Si z ou x sort du domaine
        ValidationError: Si θ sort de [0, 1]
    """
    scalar = np.ndim(z) == 0 and np.ndim(x) == 0 and np.ndim(theta) == 0
    z_arr = np.asarray(z, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    t_arr = np.asarray(theta, dtype=float)
    if np.any((t_arr < 0) | (t_arr > 1)):
        raise ValidationError("theta must lie in [0, 1]")
    _check_in_domain(g, np.ravel(z_arr))
    _check_in_domain(g, np.ravel(x_arr))

    with np.errstate(all="ignore"):
        if g.family is not None and g.family[0] == "exp" and g.family[1] != 0:
            s = g.family[1]
            value = np.logaddexp(s * z_arr + np.log(t_arr), s * x_arr + np.log1p(-t_arr)) / s
        elif g.family is not None and g.family[0] == "exp":
            value = t_arr * z_arr + (1.0 - t_arr) * x_arr
        else:
            value = g.inverse(t_arr * g.eval(z_arr) + (1.0 - t_arr) * g.eval(x_arr))
    value = np.clip(value, np.minimum(x_arr, z_arr), np.maximum(x_arr, z_arr))
    value = np.where(t_arr == 0, x_arr, np.where(t_arr == 1, z_arr, value))
    if scalar:
        return float(value)
    return value


def comparison_check(f: Generator, g: Generator, U: Interval, grid: int = 256) -> ComparisonEvidence:
    """
    Indices de grille pour la comparaison A[f] ≥ A[g].

    (i) A f > A g sur la grille; (ii) sgn(f′)·f∘g⁻¹ strictement convexe,
    testée par les différences divisées secondes sur l'image de g.
    Ce sont des indices sur un ensemble fini, pas une preuve.
    """
    lo, hi = common_scan_bounds(f, g, U)
    x = np.linspace(lo, hi, grid)
    gap = arrow_pratt(f, x) - arrow_pratt(g, x)

    y = np.asarray(g.eval(x), dtype=float)
    h = f.sign * np.asarray(f.eval(x), dtype=float)
    order = np.argsort(y)
    y, h = y[order], h[order]
    with np.errstate(all="ignore"):
        slopes = np.diff(h) / np.diff(y)
        second = 2.0 * np.diff(slopes) / (y[2:] - y[:-2])
    second = second[np.isfinite(second)]
    min_second = float(second.min()) if second.size else 0.0

    evidence = ComparisonEvidence(
        ap_ordered=bool(np.all(gap > 0)),
        convex=bool(second.size and np.all(second > 0)),
        min_ap_gap=float(gap.min()),
        min_second_difference=min_second,
    )
    logger.debug(f"Comparison {f.label} >= {g.label} on {U}: {evidence}")
    return evidence


def affine_equivalent(
    f: Generator,
    g: Generator,
    U: Interval,
    grid: int = 16,
    tol: float = 1e-9,
) -> bool:
    """
    Égalité des moyennes: A f = A g sur la grille et rapports
    (f(x)-f(y))/(f(x)-f(z)) identiques pour g sur tous les triplets x < y < z.
    """
    lo, hi = common_scan_bounds(f, g, U)
    x = np.linspace(lo, hi, max(grid, 3))
    index_f = arrow_pratt(f, x)
    index_g = arrow_pratt(g, x)
    scale = 1.0 + max(float(np.abs(index_f).max()), float(np.abs(index_g).max()))
    if np.abs(index_f - index_g).max() > tol * scale:
        return False

    i, j, k = np.meshgrid(*(np.arange(len(x)),) * 3, indexing="ij")
    mask = (i < j) & (j < k)
    fx, gx = np.asarray(f.eval(x), dtype=float), np.asarray(g.eval(x), dtype=float)
    ratio_f = (fx[i[mask]] - fx[j[mask]]) / (fx[i[mask]] - fx[k[mask]])
    ratio_g = (gx[i[mask]] - gx[j[mask]]) / (gx[i[mask]] - gx[k[mask]])
    return bool(np.abs(ratio_f - ratio_g).max() <= tol)


__all__ = [
    'exp_mean',
    'power_mean',
    'qa_mean',
    'two_point_mean',
    'comparison_check',
    'affine_equivalent',
]
