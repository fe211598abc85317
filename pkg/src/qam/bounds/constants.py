"""
Constantes C0, y0, y1 de l'estimation explicite.

C0 maximise h(C) = C³ / (3072·e^C·(e^C - 1)) sur (0, 10]; y0 = h(C0) et
y1 = 1 / (384·e^{C0/2}·(e^{C0/2} - 1)). Le maximum est localisé par section
dorée sur ln h puis poli par brentq sur la condition de stationnarité
3/C - 1 - e^C/(e^C - 1) = 0.
"""
import logging
import math
from functools import lru_cache

from scipy.optimize import brentq

from ..referentials import ESTIM_SEARCH_BRACKET, ESTIM_SEARCH_TOL, ESTIM_STATIONARITY_TOL
from ..schemas.results import EstimConstants
from ..utils.errors import NumericError
from ..utils.optimize import golden_section_search

logger = logging.getLogger(__name__)


def log_expm1(x: float) -> float:
    """ln(e^x - 1) pour x > 0, sans dépassement pour x grand."""
    if x > 1.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def estim_objective(C: float) -> float:
    """h(C) = C³ / (3072·e^C·(e^C - 1))."""
    return math.exp(log_estim_objective(C))


def log_estim_objective(C: float) -> float:
    return 3.0 * math.log(C) - math.log(3072.0) - C - log_expm1(C)


def stationarity(C: float) -> float:
    """Dérivée de ln h: 3/C - 1 - 1/(1 - e^{-C})."""
    return 3.0 / C - 1.0 - 1.0 / (-math.expm1(-C))


@lru_cache(maxsize=1)
def compute_estim_constants() -> EstimConstants:
    """
    Calcule (C0, y0, y1), une seule fois par processus.

    Raises:
        NumericError: Si le résidu de stationnarité dépasse la tolérance
    """
    lo, hi = ESTIM_SEARCH_BRACKET
    c_golden, _ = golden_section_search(log_estim_objective, lo, hi, tol=ESTIM_SEARCH_TOL, maximize=True)

    # polissage sur un crochet autour de l'estimation dorée
    left, right = max(lo, 0.5 * c_golden), min(hi, 2.0 * c_golden)
    C0 = brentq(stationarity, left, right, xtol=1e-15, rtol=4 * 2.0 ** -52, maxiter=200)
    residual = abs(stationarity(C0))
    if residual >= ESTIM_STATIONARITY_TOL:
        raise NumericError(f"C0 stationarity residual {residual:.3e} exceeds {ESTIM_STATIONARITY_TOL}")

    y0 = estim_objective(C0)
    y1 = 1.0 / (384.0 * math.exp(C0 / 2.0) * math.expm1(C0 / 2.0))
    logger.debug(f"Estimation constants: C0={C0:.17g}, y0={y0:.17g}, y1={y1:.17g}, residual={residual:.3e}")
    return EstimConstants(C0=C0, y0=y0, y1=y1, residual=residual)


__all__ = [
    'log_expm1',
    'estim_objective',
    'stationarity',
    'compute_estim_constants',
]
