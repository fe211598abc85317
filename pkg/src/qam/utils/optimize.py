"""
Primitives de recherche numérique communes au paquet.

Section dorée sur un crochet, balayages de grille raffinés autour de leur
meilleure cellule, bissection vectorisée pour inverser les fonctions monotones,
oscillation (max - min) d'une fonction sur un intervalle.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .errors import NumericError

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

VectorFunction = Callable[[np.ndarray], np.ndarray]


def golden_section_search(
    func: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-9,
    maximize: bool = False,
) -> Tuple[float, float]:
    """
    Section dorée: extremum d'une fonction unimodale sur [a, b].

    Args:
        func: Fonction scalaire
        a, b: Crochet (ordre indifférent)
        tol: Largeur finale du crochet
        maximize: Cherche le maximum au lieu du minimum

    Returns:
        (x, func(x)) au milieu du crochet final
    """
    sign = -1.0 if maximize else 1.0

    def objective(t: float) -> float:
        return sign * func(t)

    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, func(x)

    # nombre d'étapes pour atteindre tol
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = objective(c)
    yd = objective(d)

    for _ in range(n - 1):
        if yc < yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = objective(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = objective(d)

    if yc < yd:
        lo, hi = a, d
    else:
        lo, hi = c, b
    x = 0.5 * (lo + hi)
    return x, func(x)


def _scalar(func: VectorFunction) -> Callable[[float], float]:
    return lambda t: float(np.asarray(func(np.asarray(t, dtype=float))))


def refine_around(
    func: VectorFunction,
    grid: np.ndarray,
    index: int,
    tol: float,
    maximize: bool = True,
) -> Tuple[float, float]:
    """
    Raffine un extremum de grille par section dorée sur les cellules voisines.

    Le point de grille reste candidat: la valeur retournée n'est jamais moins
    bonne que celle de la grille.

    Returns:
        (x, valeur) du meilleur point trouvé
    """
    scalar = _scalar(func)
    x0 = float(grid[index])
    f0 = scalar(x0)
    lo = float(grid[max(index - 1, 0)])
    hi = float(grid[min(index + 1, len(grid) - 1)])
    if hi <= lo:
        return x0, f0
    x1, f1 = golden_section_search(scalar, lo, hi, tol=tol, maximize=maximize)
    if not math.isfinite(f1):
        return x0, f0
    better = f1 > f0 if maximize else f1 < f0
    return (x1, f1) if better else (x0, f0)


def sample(func: VectorFunction, lo: float, hi: float, points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Évalue func sur une grille uniforme et rejette les valeurs non finies."""
    grid = np.linspace(lo, hi, points)
    with np.errstate(all="ignore"):
        values = np.asarray(func(grid), dtype=float)
    if values.shape != grid.shape:
        values = np.broadcast_to(values, grid.shape).astype(float)
    bad = ~np.isfinite(values)
    if bad.any():
        point = float(grid[np.argmax(bad)])
        raise NumericError("Non-finite sample", point=(point,))
    return grid, values


@dataclass(frozen=True)
class Oscillation:
    """Résultat d'un balayage d'oscillation: max - min et les deux points extrémaux."""
    value: float
    x_min: float
    x_max: float
    f_min: float
    f_max: float


def oscillation(
    func: VectorFunction,
    lo: float,
    hi: float,
    points: int = 4096,
    tol: float = 1e-12,
) -> Oscillation:
    """
    Oscillation max - min de func sur [lo, hi].

    Extrema repérés sur un balayage uniforme puis raffinés par section dorée
    dans les cellules voisines.
    """
    grid, values = sample(func, lo, hi, points)
    i_max = int(np.argmax(values))
    i_min = int(np.argmin(values))
    x_max, f_max = refine_around(func, grid, i_max, tol, maximize=True)
    x_min, f_min = refine_around(func, grid, i_min, tol, maximize=False)
    return Oscillation(
        value=max(f_max - f_min, 0.0),
        x_min=x_min,
        x_max=x_max,
        f_min=f_min,
        f_max=f_max,
    )


def sup_abs(
    func: VectorFunction,
    lo: float,
    hi: float,
    points: int = 4096,
    tol: float = 1e-12,
) -> Tuple[float, float]:
    """
    Sup de |func| sur [lo, hi] par balayage et raffinement.

    Returns:
        (sup, argsup)
    """
    def absolute(t):
        return np.abs(func(t))

    grid, values = sample(absolute, lo, hi, points)
    index = int(np.argmax(values))
    x, value = refine_around(absolute, grid, index, tol, maximize=True)
    return value, x


def inf_abs(
    func: VectorFunction,
    lo: float,
    hi: float,
    points: int = 4096,
    tol: float = 1e-12,
) -> Tuple[float, float]:
    """Inf de |func| sur [lo, hi]; renvoie (inf, arginf)."""
    def absolute(t):
        return np.abs(func(t))

    grid, values = sample(absolute, lo, hi, points)
    index = int(np.argmin(values))
    x, value = refine_around(absolute, grid, index, tol, maximize=False)
    return value, x


def grid_argmax(values: np.ndarray) -> Tuple[int, ...]:
    """Indice du maximum d'un tableau n-d; à égalité, le plus petit indice à plat."""
    flat = int(np.argmax(values))
    return tuple(int(i) for i in np.unravel_index(flat, values.shape))


def vectorized_bisection(
    target: np.ndarray,
    func: VectorFunction,
    bounds: Tuple[float, float],
    increasing: bool,
    xtol: float,
    max_iter: int = 200,
) -> np.ndarray:
    """
    Résout func(x) = target élément par élément pour func monotone sur bounds.

    Le nombre de bissections est fixé par la largeur du crochet et xtol: chaque
    élément converge à la même tolérance absolue en x. Les cibles hors de
    l'image de func sont ramenées au bord le plus proche.
    """
    target = np.asarray(target, dtype=float)
    left = np.full(target.shape, float(bounds[0]))
    right = np.full(target.shape, float(bounds[1]))
    width = float(bounds[1]) - float(bounds[0])
    n = 0
    if width > xtol:
        n = min(int(math.ceil(math.log2(width / xtol))), max_iter)
    with np.errstate(all="ignore"):
        for _ in range(n):
            middle = 0.5 * (left + right)
            value = func(middle)
            above = value > target if increasing else value < target
            right = np.where(above, middle, right)
            left = np.where(above, left, middle)
    logger.debug(f"Bisection converged in {n} iterations")
    return 0.5 * (left + right)


__all__ = [
    'golden_section_search',
    'refine_around',
    'sample',
    'Oscillation',
    'oscillation',
    'sup_abs',
    'inf_abs',
    'grid_argmax',
    'vectorized_bisection',
]
