"""
∗-normes des indices d'Arrow-Pratt.

‖u‖∗ = sup sur x, y de |∫ₓʸ u| est l'oscillation (max - min) d'une primitive
de u. Comme A f = (ln|f′|)′, la ∗-norme d'un indice d'Arrow-Pratt se passe de
quadrature: c'est l'oscillation de ln|f′|.
"""
import logging
import math
from typing import Callable, Optional

import numpy as np
from scipy.integrate import cumulative_simpson

from .config.config import get_settings
from .generators.base import Generator, arrow_pratt_difference, arrow_pratt_function, common_scan_bounds
from .generators.interval import Interval
from .schemas.results import StarNormResult
from .utils.errors import ValidationError, handle_numeric_errors
from .utils.optimize import golden_section_search, oscillation, sample

logger = logging.getLogger(__name__)

VectorFunction = Callable[[np.ndarray], np.ndarray]

INITIAL_PANELS = 1024
MAX_PANELS = 2 ** 20


def _simpson_panel(u: VectorFunction, a: float, b: float) -> float:
    """Simpson sur le seul panneau [a, b] (signé si b < a)."""
    values = np.broadcast_to(np.asarray(u(np.array([a, 0.5 * (a + b), b])), dtype=float), (3,))
    return (b - a) / 6.0 * (values[0] + 4.0 * values[1] + values[2])


def _tabulate(u: VectorFunction, lo: float, hi: float, panels: int):
    grid, values = sample(u, lo, hi, panels + 1)
    antiderivative = cumulative_simpson(values, x=grid, initial=0.0)
    return grid, antiderivative


def _refine_extreme(u, grid, antiderivative, index, tol, maximize):
    """Raffinement par section dorée de W(t) = W(t_i) + ∫_{t_i}^t u autour d'un extremum de grille."""
    t_i = float(grid[index])
    w_i = float(antiderivative[index])
    lo = float(grid[max(index - 1, 0)])
    hi = float(grid[min(index + 1, len(grid) - 1)])

    def local(t):
        return w_i + _simpson_panel(u, t_i, t)

    t, w = golden_section_search(local, lo, hi, tol=tol, maximize=maximize)
    better = w > w_i if maximize else w < w_i
    return (t, w) if better and math.isfinite(w) else (t_i, w_i)


@handle_numeric_errors
def star_norm(u: VectorFunction, V: Interval, rtol: Optional[float] = None) -> StarNormResult:
    """
    ∗-norme d'une fonction continue u sur l'adhérence de V.

    La primitive W est tabulée par Simpson composite, la grille doublant
    jusqu'à ce que deux oscillations successives s'accordent à rtol près;
    les extrema de W sont ensuite raffinés par section dorée.

    Args:
        u: Intégrande vectorisée
        V: Intervalle
        rtol: Accord entre raffinements (par défaut QAM_STAR_NORM_RTOL)

    Raises:
        NumericError: Si u n'est pas finie en un point d'échantillonnage
    """
    numerics = get_settings().numerics
    rtol = rtol or numerics['star_norm_rtol']
    lo, hi = V.lo, V.hi

    panels = INITIAL_PANELS
    grid, antiderivative = _tabulate(u, lo, hi, panels)
    previous = float(antiderivative.max() - antiderivative.min())
    while panels < MAX_PANELS:
        panels *= 2
        grid, antiderivative = _tabulate(u, lo, hi, panels)
        current = float(antiderivative.max() - antiderivative.min())
        if abs(current - previous) <= rtol * abs(current):
            break
        previous = current
    else:
        logger.warning(f"Star norm on {V} did not stabilize at {panels} panels")

    tol = 1e-12 * V.length()
    x_max, w_max = _refine_extreme(u, grid, antiderivative, int(np.argmax(antiderivative)), tol, True)
    x_min, w_min = _refine_extreme(u, grid, antiderivative, int(np.argmin(antiderivative)), tol, False)
    logger.debug(f"Star norm on {V}: {panels} panels, value {w_max - w_min:.17g}")
    return StarNormResult(
        value=max(w_max - w_min, 0.0),
        argmax_pair=(x_min, x_max),
        method="grid",
    )


def _check_subset(generator: Generator, V: Interval) -> None:
    if not V.is_subset_of(generator.domain.closure()):
        raise ValidationError(f"{V} is not contained in the domain {generator.domain} of {generator.label}")


def _cross_check(result: StarNormResult, u: VectorFunction, lo: float, hi: float, label: str) -> StarNormResult:
    reference = star_norm(u, Interval(lo, hi)).value
    if abs(reference - result.value) > 1e-8 * max(abs(result.value), 1.0):
        logger.warning(
            f"Star norm cross-check mismatch for {label}: oscillation {result.value:.17g}, "
            f"quadrature {reference:.17g}"
        )
    return result.copy(update={'cross_check': reference})


@handle_numeric_errors
def star_norm_ap(f: Generator, V: Optional[Interval] = None, cross_check: bool = False) -> StarNormResult:
    """
    ‖A f‖∗ sur V: oscillation de ln|f′|.

    Args:
        f: Générateur
        V: Sous-intervalle du domaine (par défaut le domaine)
        cross_check: Recalcule aussi star_norm de l'indice ponctuel
    """
    V = V or f.domain
    _check_subset(f, V)
    lo, hi = f.scan_bounds(V)
    numerics = get_settings().numerics
    osc = oscillation(f.log_abs_derivative, lo, hi, numerics['scan_points'], tol=1e-12 * V.length())
    result = StarNormResult(value=osc.value, argmax_pair=(osc.x_min, osc.x_max), method="oscillation")
    if cross_check:
        result = _cross_check(result, arrow_pratt_function(f), lo, hi, f.label)
    return result


@handle_numeric_errors
def star_norm_ap_diff(
    f: Generator,
    g: Generator,
    V: Optional[Interval] = None,
    cross_check: bool = False,
) -> StarNormResult:
    """
    ε = ‖A f - A g‖∗ sur V: oscillation de ln|f′| - ln|g′|.
    """
    V = V or f.domain
    _check_subset(f, V)
    _check_subset(g, V)
    lo, hi = common_scan_bounds(f, g, V)

    def log_ratio(t):
        return f.log_abs_derivative(t) - g.log_abs_derivative(t)

    numerics = get_settings().numerics
    osc = oscillation(log_ratio, lo, hi, numerics['scan_points'], tol=1e-12 * V.length())
    result = StarNormResult(value=osc.value, argmax_pair=(osc.x_min, osc.x_max), method="oscillation")
    if cross_check:
        result = _cross_check(result, arrow_pratt_difference(f, g), lo, hi, f"{f.label} - {g.label}")
    return result


def partition_subinterval(
    u: VectorFunction,
    U: Interval,
    n: int,
    norm: Optional[Callable[[Interval], float]] = None,
) -> Interval:
    """
    Cellule V de la partition de U en n cellules égales de ∗-norme maximale.

    Il en existe toujours une avec ‖u‖∗,V ≥ (1/n)‖u‖∗,U. En cas d'égalité la
    cellule d'indice le plus bas est retenue. norm remplace la quadrature
    quand la ∗-norme par cellule a une forme plus directe (oscillation d'une
    primitive connue).

    Raises:
        ValidationError: Si n < 1
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValidationError(f"Partition size must be a positive integer, got {n}")
    n = int(n)
    if n == 1:
        return U
    cells = U.split(n)
    norm = norm or (lambda cell: star_norm(u, cell).value)
    norms = np.array([norm(cell) for cell in cells])
    index = int(np.argmax(norms))
    logger.debug(f"Partition of {U} in {n} cells: best cell {index} with norm {norms[index]:.17g}")
    return cells[index]


__all__ = [
    'star_norm',
    'star_norm_ap',
    'star_norm_ap_diff',
    'partition_subinterval',
]
