"""
Générateur d'une moyenne quasi-arithmétique.

Un générateur est une fonction strictement monotone de classe C² sur un
intervalle borné, à dérivée première jamais nulle. Toutes les fonctions sont
vectorisées (tableaux numpy en entrée et en sortie) et la valeur est
immuable: elle peut être partagée entre threads.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from ..config.config import get_settings
from ..utils.errors import NotAGeneratorError
from ..utils.optimize import refine_around, sample
from .interval import Interval

logger = logging.getLogger(__name__)

VANISHING_DERIVATIVE_REL = 1e-13

VectorFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Generator:
    """
    Fonction génératrice f ∈ F(U) et ses dérivées.

    Attributes:
        domain: Domaine U
        sign: Signe de f′ (+1 ou -1)
        eval: f
        d1: f′
        d2: f″
        inverse: f⁻¹ sur l'image de f
        label: Libellé lisible (spécification CLI ou expression)
        extends_to_closure: f se prolonge continûment sur [lo, hi]
        log_abs_d1: ln|f′| sous forme fermée si disponible
        family: ('exp', s) pour la famille exponentielle, sinon None
    """
    domain: Interval
    sign: int
    eval: VectorFunction
    d1: VectorFunction
    d2: VectorFunction
    inverse: VectorFunction
    label: str
    extends_to_closure: bool = True
    log_abs_d1: Optional[VectorFunction] = field(default=None, compare=False)
    family: Optional[Tuple[str, float]] = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise NotAGeneratorError(f"Generator sign must be +1 or -1, got {self.sign}")

    def log_abs_derivative(self, x: np.ndarray) -> np.ndarray:
        """ln|f′(x)|, primitive de l'indice d'Arrow-Pratt."""
        if self.log_abs_d1 is not None:
            return self.log_abs_d1(x)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.d1(x)))

    def scan_bounds(self, V: Optional[Interval] = None) -> Tuple[float, float]:
        """
        Bornes des balayages numériques sur V (par défaut le domaine).

        Fermeture de V si f se prolonge continûment aux extrémités ouvertes,
        sinon [lo + μ, hi - μ] avec μ = margin_rel·|V| sur les bords ouverts
        du domaine.
        """
        V = V or self.domain
        margin = get_settings().numerics['margin_rel'] * V.length()
        lo, hi = V.lo, V.hi
        if not self.extends_to_closure:
            if lo <= self.domain.lo and not self.domain.lo_closed:
                lo = self.domain.lo + margin
            if hi >= self.domain.hi and not self.domain.hi_closed:
                hi = self.domain.hi - margin
        return lo, hi

    def __str__(self) -> str:
        return self.label


def common_scan_bounds(f: Generator, g: Generator, V: Interval) -> Tuple[float, float]:
    """Intersection des bornes de balayage de deux générateurs sur V."""
    f_lo, f_hi = f.scan_bounds(V)
    g_lo, g_hi = g.scan_bounds(V)
    return max(f_lo, g_lo), min(f_hi, g_hi)


def arrow_pratt(g: Generator, x):
    """
    Indice d'Arrow-Pratt A g(x) = g″(x) / g′(x).

    Args:
        g: Générateur
        x: Point (ou tableau de points) du domaine

    Raises:
        NotAGeneratorError: Si g′ s'annule en un point
    """
    x_arr = np.asarray(x, dtype=float)
    first = np.asarray(g.d1(x_arr), dtype=float)
    if np.any(first == 0):
        point = float(np.broadcast_to(x_arr, first.shape)[first == 0][0])
        raise NotAGeneratorError(f"Derivative of {g.label} vanishes at x={point}")
    with np.errstate(all="ignore"):
        index = np.asarray(g.d2(x_arr), dtype=float) / first
    if np.ndim(x) == 0:
        return float(index)
    return index


def arrow_pratt_function(g: Generator) -> VectorFunction:
    """t ↦ A g(t) vectorisée."""
    return lambda t: arrow_pratt(g, t)


def arrow_pratt_difference(f: Generator, g: Generator) -> VectorFunction:
    """t ↦ A f(t) - A g(t) vectorisée."""
    return lambda t: arrow_pratt(f, t) - arrow_pratt(g, t)


def check_monotone(g: Generator, points: Optional[int] = None) -> int:
    """
    Contrôle de monotonie stricte sur une grille (preuve numérique, pas formelle).

    Returns:
        Le signe constant de g′ sur la grille

    Raises:
        NotAGeneratorError: Si g′ s'annule ou change de signe
    """
    points = points or get_settings().numerics['monotone_points']
    lo, hi = g.scan_bounds()
    try:
        grid, values = sample(g.d1, lo, hi, points)
    except Exception as e:
        raise NotAGeneratorError(f"{g.label}: derivative is not finite on {g.domain}") from e
    signs = np.sign(values)
    if np.any(signs == 0):
        point = float(grid[np.argmax(signs == 0)])
        raise NotAGeneratorError(f"{g.label}: derivative vanishes at x={point:.17g}")
    if np.any(signs != signs[0]):
        point = float(grid[np.argmax(signs != signs[0])])
        raise NotAGeneratorError(f"{g.label}: derivative changes sign near x={point:.17g}")

    # zéro de g′ entre deux points de grille (x³ en 0), jugé à l'échelle des voisins:
    # une dérivée qui varie de plusieurs ordres de grandeur sur U (exp(30x)) reste admise
    magnitude = np.abs(values)
    index = int(np.argmin(magnitude))
    x_min, smallest = refine_around(
        lambda t: np.abs(g.d1(t)), grid, index, tol=1e-12 * (hi - lo), maximize=False
    )
    local_scale = float(magnitude[max(index - 1, 0):index + 2].max())
    if smallest == 0 or smallest <= VANISHING_DERIVATIVE_REL * local_scale:
        raise NotAGeneratorError(f"{g.label}: derivative vanishes near x={x_min:.17g}")
    return int(signs[0])


def affine_combination(g: Generator, alpha: float, beta: float, label: Optional[str] = None) -> Generator:
    """Générateur α·g + β (même moyenne pour α ≠ 0)."""
    if alpha == 0:
        raise NotAGeneratorError("Affine image with alpha = 0 is constant")
    log_alpha = np.log(abs(alpha))
    return Generator(
        domain=g.domain,
        sign=g.sign * (1 if alpha > 0 else -1),
        eval=lambda x: alpha * g.eval(x) + beta,
        d1=lambda x: alpha * g.d1(x),
        d2=lambda x: alpha * g.d2(x),
        inverse=lambda y: g.inverse((np.asarray(y, dtype=float) - beta) / alpha),
        label=label or f"{alpha:.17g}*({g.label})+{beta:.17g}",
        extends_to_closure=g.extends_to_closure,
        log_abs_d1=lambda x: log_alpha + g.log_abs_derivative(x),
    )


def affine_normalize(g: Generator, target: Interval) -> Generator:
    """
    Normalisation affine α·g + β dont l'image sur le domaine est target.

    α et β envoient g(lo) sur target.lo et g(hi) sur target.hi (α < 0 si g
    est décroissante). La moyenne engendrée ne change pas.
    """
    lo, hi = g.scan_bounds()
    g_lo = float(g.eval(np.asarray(lo)))
    g_hi = float(g.eval(np.asarray(hi)))
    alpha = (target.hi - target.lo) / (g_hi - g_lo)
    beta = target.lo - alpha * g_lo
    return affine_combination(g, alpha, beta, label=f"normalize({g.label})")


def reparametrize(g: Generator, target: Interval) -> Generator:
    """
    Composition t ↦ g(lo + |U|·(t - a) / |target|) ramenant le domaine sur target.

    Les moyennes commutent avec ce changement de variable affine, donc toute
    distance calculée sur target se multiplie par |U| / |target|.
    """
    U = g.domain
    scale = U.length() / target.length()

    def to_domain(t):
        return U.lo + scale * (np.asarray(t, dtype=float) - target.lo)

    def to_target(x):
        return target.lo + (np.asarray(x, dtype=float) - U.lo) / scale

    log_scale = np.log(scale)
    return Generator(
        domain=Interval(target.lo, target.hi, lo_closed=U.lo_closed, hi_closed=U.hi_closed),
        sign=g.sign,
        eval=lambda t: g.eval(to_domain(t)),
        d1=lambda t: scale * g.d1(to_domain(t)),
        d2=lambda t: scale * scale * g.d2(to_domain(t)),
        inverse=lambda y: to_target(g.inverse(y)),
        label=g.label,
        extends_to_closure=g.extends_to_closure,
        log_abs_d1=lambda t: log_scale + g.log_abs_derivative(to_domain(t)),
    )


def restrict(g: Generator, V: Interval) -> Generator:
    """Restriction g|_V (même formules, domaine V)."""
    if not V.is_subset_of(g.domain.closure()):
        raise NotAGeneratorError(f"{V} is not contained in the domain {g.domain} of {g.label}")
    return Generator(
        domain=V,
        sign=g.sign,
        eval=g.eval,
        d1=g.d1,
        d2=g.d2,
        inverse=g.inverse,
        label=g.label,
        extends_to_closure=g.extends_to_closure,
        log_abs_d1=g.log_abs_d1,
        family=g.family,
    )


__all__ = [
    'Generator',
    'arrow_pratt',
    'arrow_pratt_function',
    'arrow_pratt_difference',
    'check_monotone',
    'common_scan_bounds',
    'affine_combination',
    'affine_normalize',
    'reparametrize',
    'restrict',
]
