"""
Bornes de ρ exprimées par les indices d'Arrow-Pratt.

Toutes les bornes dépendent de quatre mesures du couple sur U: K (sup de
|A f| et |A g|), ε = ‖A f - A g‖∗, les ∗-normes ‖A f‖∗, ‖A g‖∗, et |U|.
Les membres de droite ne sont pas symétriques en (f, g): chaque borne est
évaluée dans les deux sens et la plus fine est retenue, les deux valeurs
restant dans params.
"""
import logging
import math
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from ..config.config import OptimizerConfig, get_settings
from ..generators.base import Generator, arrow_pratt_difference, arrow_pratt_function, common_scan_bounds
from ..generators.interval import Interval
from ..norms import partition_subinterval, star_norm_ap, star_norm_ap_diff
from ..referentials import PARTITION_MAX_CELLS
from ..rho import estimate_rho
from ..schemas.results import BoundEntry, ConvergencePoint
from ..utils.errors import ValidationError, handle_numeric_errors
from ..utils.optimize import golden_section_search, grid_argmax, sup_abs
from ..utils.validators import validate_finite, validate_positive
from .constants import compute_estim_constants, log_expm1

logger = logging.getLogger(__name__)

LOG_FLOAT_MAX = math.log(sys.float_info.max)
FAMILY_K_REL = 1e-12
EPSILON_RANGE_SLACK = 1e-9


@dataclass(frozen=True)
class PairMeasures:
    """Mesures d'un couple (f, g) sur U dont dépendent toutes les bornes."""
    K: float
    epsilon: float
    norm_f: float
    norm_g: float
    length: float

    @property
    def norm(self) -> float:
        """Plus petite des deux ∗-normes: le sens le plus favorable."""
        return min(self.norm_f, self.norm_g)

    @classmethod
    def measure(cls, f: Generator, g: Generator, U: Interval) -> "PairMeasures":
        measures = cls(
            K=measure_K(f, g, U),
            epsilon=star_norm_ap_diff(f, g, U).value,
            norm_f=star_norm_ap(f, U).value,
            norm_g=star_norm_ap(g, U).value,
            length=U.length(),
        )
        if measures.epsilon > 2.0 * measures.K * measures.length * (1.0 + EPSILON_RANGE_SLACK) + 1e-12:
            logger.warning(
                f"epsilon={measures.epsilon:.17g} exceeds 2K|U|={2 * measures.K * measures.length:.17g} "
                f"for {f.label}/{g.label} on {U}"
            )
        return measures

    def params(self) -> Dict[str, float]:
        return {
            'K': self.K,
            'epsilon': self.epsilon,
            'norm_f': self.norm_f,
            'norm_g': self.norm_g,
            'length': self.length,
        }


@handle_numeric_errors
def measure_K(f: Generator, g: Generator, U: Interval) -> float:
    """K = max(sup_U |A f|, sup_U |A g|) par balayage et raffinement."""
    lo, hi = common_scan_bounds(f, g, U)
    points = get_settings().numerics['scan_points']
    tol = 1e-12 * U.length()
    sup_f, _ = sup_abs(arrow_pratt_function(f), lo, hi, points, tol)
    sup_g, _ = sup_abs(arrow_pratt_function(g), lo, hi, points, tol)
    return max(sup_f, sup_g)


def in_family_k(f: Generator, K: float, U: Optional[Interval] = None) -> bool:
    """Appartenance à F_K(U): sup_U |A f| ≤ K sur la grille de balayage."""
    K = validate_finite("K", K)
    U = U or f.domain
    lo, hi = f.scan_bounds(U)
    sup_f, _ = sup_abs(arrow_pratt_function(f), lo, hi, get_settings().numerics['scan_points'])
    return sup_f <= K * (1.0 + FAMILY_K_REL)


def _log_expm1_array(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    with np.errstate(all="ignore"):
        large = x + np.log1p(-np.exp(-x))
        small = np.log(np.expm1(x))
    return np.where(x > 1.0, large, small)


def main_bound_ceiling(K: float, lenU: float) -> float:
    """Plafond (1/8)·|U|·e^{-K|U|/2} de la borne principale quand ε ≤ 2K|U|."""
    K = validate_finite("K", K)
    lenU = validate_positive("lenU", lenU)
    return 0.125 * lenU * math.exp(-0.5 * K * lenU)


# Borne supérieure par les ∗-normes

def _upper_star_norm_value(length: float, norm: float, epsilon: float) -> float:
    if epsilon == 0:
        return 0.0
    log_value = math.log(length) + norm + log_expm1(epsilon)
    if log_value > LOG_FLOAT_MAX:
        return math.inf
    return math.exp(log_value)


def upper_star_norm_entry(measures: PairMeasures) -> BoundEntry:
    value_f = _upper_star_norm_value(measures.length, measures.norm_f, measures.epsilon)
    value_g = _upper_star_norm_value(measures.length, measures.norm_g, measures.epsilon)
    value = min(value_f, value_g)
    params = {'value_f': value_f, 'value_g': value_g, 'direction': 'f' if value_f <= value_g else 'g'}
    if not math.isfinite(value):
        return BoundEntry.not_applicable('upper_star_norm', 'upper', "bound overflows", **params)
    return BoundEntry(name='upper_star_norm', kind='upper', value=value, params=params)


@handle_numeric_errors
def upper_star_norm(f: Generator, g: Generator, U: Optional[Interval] = None) -> float:
    """
    ρ ≤ |U|·e^{‖A f‖∗}·(e^{‖A g - A f‖∗} - 1), symétrisée par le min.

    Returns:
        La borne, math.inf quand elle déborde
    """
    U = U or f.domain
    entry = upper_star_norm_entry(PairMeasures.measure(f, g, U))
    return entry.value if entry.applicable else math.inf


# Bornes universelles sur F_K(U)

def upper_universal(K: float, lenU: float) -> Tuple[float, float]:
    """
    Les deux bornes universelles de ρ sur F_K(U).

    Args:
        K: Borne des indices d'Arrow-Pratt
        lenU: Longueur |U|

    Returns:
        ((1/K)·ln(½(e^{K|U|} + 1)), ((3 + 7e)/6)·K·|U|²)

    Raises:
        ValidationError: Si K <= 0 ou lenU <= 0
    """
    K = validate_positive("K", K)
    lenU = validate_positive("lenU", lenU)
    t = K * lenU
    first = (t - math.log(2.0) + math.log1p(math.exp(-t))) / K
    second = (3.0 + 7.0 * math.e) / 6.0 * K * lenU * lenU
    return first, second


def upper_universal_entries(measures: PairMeasures) -> Tuple[BoundEntry, BoundEntry]:
    """Les deux bornes universelles, forme logarithmique puis quadratique."""
    names = ("upper_universal_log", "upper_universal_quadratic")
    if measures.K <= 0:
        reason = "K = 0 (both generators affine)"
        return tuple(BoundEntry.not_applicable(name, "upper", reason) for name in names)
    values = upper_universal(measures.K, measures.length)
    params = {"K": measures.K, "length": measures.length}
    return tuple(
        BoundEntry(name=name, kind="upper", value=value, params=params)
        for name, value in zip(names, values)
    )


# Borne inférieure principale

def _lower_main_value(epsilon: float, K: float, norm: float, length: float) -> float:
    if epsilon == 0:
        return 0.0
    log_value = (
        math.log(epsilon)
        + log_expm1(epsilon / 4.0)
        + log_expm1(epsilon / 6.0)
        - math.log(16.0 * K)
        - norm
        - log_expm1(K * length)
    )
    return math.exp(log_value)


def lower_main_entry(measures: PairMeasures) -> BoundEntry:
    ceiling = main_bound_ceiling(measures.K, measures.length)
    if measures.epsilon == 0:
        return BoundEntry(name='lower_main', kind='lower', value=0.0, params={'ceiling': ceiling})
    value_f = _lower_main_value(measures.epsilon, measures.K, measures.norm_f, measures.length)
    value_g = _lower_main_value(measures.epsilon, measures.K, measures.norm_g, measures.length)
    value = max(value_f, value_g)
    if value > ceiling * (1.0 + 1e-12):
        logger.warning(f"lower_main={value:.17g} exceeds its ceiling {ceiling:.17g}")
    return BoundEntry(
        name='lower_main',
        kind='lower',
        value=value,
        params={'value_f': value_f, 'value_g': value_g, 'ceiling': ceiling,
                'direction': 'f' if value_f >= value_g else 'g'},
    )


@handle_numeric_errors
def lower_main(f: Generator, g: Generator, U: Optional[Interval] = None) -> float:
    """
    ρ ≥ ε(e^{ε/4} - 1)(e^{ε/6} - 1) / (16K·e^{‖A f‖∗}·(e^{K|U|} - 1)).

    Calculée en logarithmes avec expm1; le max des deux sens est retenu.
    ε = 0 donne 0.
    """
    U = U or f.domain
    return lower_main_entry(PairMeasures.measure(f, g, U)).value


# Borne inférieure optimisée en (c, δ)

class _MainObjective:
    """
    min(T1, T2) avec T1 = (1-c)(ε/2K - 2δ) et
    T2 = δ(e^{ε/4} - 1)(e^{(ε/2 - 2Kδ)c} - 1) / (2e^{‖A f‖∗}(e^{K|U|} - 1)).

    T1 décroît et T2 croît en c: pour δ fixé l'optimum égalise les deux termes.
    """

    def __init__(self, epsilon: float, K: float, norm: float, length: float):
        self.epsilon = epsilon
        self.K = K
        self.log_scale = log_expm1(epsilon / 4.0) - math.log(2.0) - norm - log_expm1(K * length)
        self.delta_max = epsilon / (4.0 * K)

    def first(self, c, delta):
        return (1.0 - c) * (self.epsilon / (2.0 * self.K) - 2.0 * delta)

    def second(self, c, delta):
        exponent = (self.epsilon / 2.0 - 2.0 * self.K * delta) * c
        with np.errstate(all="ignore"):
            log_value = np.log(delta) + _log_expm1_array(exponent) + self.log_scale
        return np.where(exponent > 0, np.exp(log_value), 0.0)

    def __call__(self, c, delta):
        return np.minimum(self.first(c, delta), self.second(c, delta))

    def balanced(self, delta: float) -> Tuple[float, float]:
        """(c*, valeur) pour δ fixé, résolu en u = 1 - c pour garder la précision près de c = 1."""
        scale = self.epsilon / (2.0 * self.K) - 2.0 * delta
        if scale <= 0:
            return 1.0, 0.0

        def gap(u):
            return u * scale - float(self.second(1.0 - u, delta))

        if gap(0.0) >= 0:
            return 1.0, 0.0
        u = brentq(gap, 0.0, 1.0, xtol=1e-300, rtol=4 * 2.0 ** -52, maxiter=200)
        return 1.0 - u, u * scale


def _lower_main_sup_value(epsilon: float, K: float, norm: float, length: float, grid: int):
    if epsilon == 0:
        return 0.0, (2.0 / 3.0, 0.0)
    objective = _MainObjective(epsilon, K, norm, length)

    c = np.linspace(0.0, 1.0, grid)
    deltas = np.linspace(0.0, objective.delta_max, grid + 2)[1:-1]
    values = objective(c[:, None], deltas[None, :])
    i, j = grid_argmax(values)
    candidates = [(float(values[i, j]), (float(c[i]), float(deltas[j])))]

    reference = (2.0 / 3.0, epsilon / (8.0 * K))
    candidates.append((float(objective(*reference)), reference))

    lo = float(deltas[max(j - 1, 0)])
    hi = float(deltas[min(j + 1, len(deltas) - 1)])
    delta, value = golden_section_search(
        lambda d: objective.balanced(d)[1], lo, hi, tol=1e-12 * objective.delta_max, maximize=True
    )
    c_best, value = objective.balanced(delta)
    candidates.append((value, (c_best, delta)))

    value, arg = max(candidates, key=lambda item: item[0])
    return value, arg


def lower_main_sup_entry(measures: PairMeasures, grid: Optional[int] = None) -> BoundEntry:
    grid = grid or get_settings().numerics['sup_grid']
    if measures.epsilon == 0:
        return BoundEntry(name='lower_main_sup', kind='lower', value=0.0)
    value_f, arg_f = _lower_main_sup_value(measures.epsilon, measures.K, measures.norm_f, measures.length, grid)
    value_g, arg_g = _lower_main_sup_value(measures.epsilon, measures.K, measures.norm_g, measures.length, grid)
    value, (c, delta) = (value_f, arg_f) if value_f >= value_g else (value_g, arg_g)
    return BoundEntry(
        name='lower_main_sup',
        kind='lower',
        value=value,
        params={'value_f': value_f, 'value_g': value_g, 'c': c, 'delta': delta},
    )


@handle_numeric_errors
def lower_main_sup(f: Generator, g: Generator, U: Optional[Interval] = None) -> float:
    """
    Sup sur (c, δ) ∈ [0, 1] × (0, ε/4K) de min(T1, T2).

    Grille puis, pour δ fixé, égalisation des deux termes par brentq et
    section dorée en δ. Le point c = 2/3, δ = ε/8K de la borne principale
    fait partie des candidats: la valeur la domine toujours.
    """
    U = U or f.domain
    return lower_main_sup_entry(PairMeasures.measure(f, g, U)).value


# Estimation explicite

def _lower_estim_value(epsilon: float, K: float, length: float) -> Tuple[float, str]:
    if epsilon == 0:
        return 0.0, "zero"
    constants = compute_estim_constants()
    short = constants.y1 * epsilon ** 3 / K
    long = constants.y0 * epsilon ** 3 / (length ** 3 * K ** 4)
    threshold = constants.C0 / 2.0
    t = K * length
    if t < threshold:
        return short, "short"
    if t > threshold:
        return long, "long"
    return max(short, long), "boundary"


def lower_estim_entry(measures: PairMeasures) -> BoundEntry:
    value, case = _lower_estim_value(measures.epsilon, measures.K, measures.length)
    constants = compute_estim_constants()
    return BoundEntry(
        name='lower_estim',
        kind='lower',
        value=value,
        params={'case': case, 'C0': constants.C0, 'y0': constants.y0, 'y1': constants.y1},
    )


@handle_numeric_errors
def lower_estim(f: Generator, g: Generator, U: Optional[Interval] = None) -> float:
    """
    Estimation explicite: y1·ε³/K si K|U| ≤ C0/2, sinon y0·ε³/(|U|³K⁴).

    À l'égalité exacte les deux formes sont calculées et la plus grande retenue.
    """
    U = U or f.domain
    return lower_estim_entry(PairMeasures.measure(f, g, U)).value


def lower_estim_from(epsilon: float, K: float, lenU: float) -> float:
    """Même estimation à partir de (ε, K, |U|) donnés."""
    epsilon = validate_finite("epsilon", epsilon)
    K = validate_positive("K", K)
    lenU = validate_positive("lenU", lenU)
    if epsilon < 0:
        raise ValidationError(f"epsilon doit être positif. Reçu : {epsilon!r}")
    return _lower_estim_value(epsilon, K, lenU)[0]


def lower_main_from(epsilon: float, K: float, norm: float, lenU: float) -> float:
    """Borne principale à partir de (ε, K, ‖A f‖∗, |U|) donnés."""
    epsilon = validate_finite("epsilon", epsilon)
    K = validate_positive("K", K)
    lenU = validate_positive("lenU", lenU)
    if epsilon < 0:
        raise ValidationError(f"epsilon doit être positif. Reçu : {epsilon!r}")
    return _lower_main_value(epsilon, K, validate_finite("norm", norm), lenU)


# Borne principale sur une cellule de partition

def lower_main_partitioned_entry(
    f: Generator,
    g: Generator,
    U: Interval,
    measures: PairMeasures,
    n_max: Optional[int] = None,
) -> BoundEntry:
    """
    Borne principale évaluée sur la meilleure cellule V des partitions de U
    en n = 1..n_max cellules. ρ sur V minore ρ sur U.
    """
    if measures.epsilon == 0:
        return BoundEntry(name='lower_main_partitioned', kind='lower', value=0.0, params={'n': 1})
    if n_max is None:
        C0 = compute_estim_constants().C0
        n_max = max(int(math.ceil(measures.K * measures.length / C0)), 1)
    n_max = min(int(n_max), PARTITION_MAX_CELLS)

    u = arrow_pratt_difference(f, g)

    def cell_norm(cell):
        return star_norm_ap_diff(f, g, cell).value

    best_value, best_n, best_V = -1.0, 1, U
    for n in range(1, n_max + 1):
        V = partition_subinterval(u, U, n, norm=cell_norm)
        local = measures if n == 1 else PairMeasures.measure(f, g, V)
        if local.epsilon == 0 or local.K == 0:
            continue
        value = max(
            _lower_main_value(local.epsilon, local.K, local.norm_f, local.length),
            _lower_main_value(local.epsilon, local.K, local.norm_g, local.length),
        )
        if value > best_value:
            best_value, best_n, best_V = value, n, V
    logger.debug(f"Partitioned main bound for {f.label}/{g.label}: n={best_n}, V={best_V}, {best_value:.17g}")
    return BoundEntry(
        name='lower_main_partitioned',
        kind='lower',
        value=max(best_value, 0.0),
        params={'n': best_n, 'n_max': n_max, 'V': [best_V.lo, best_V.hi]},
    )


@handle_numeric_errors
def lower_main_partitioned(
    f: Generator,
    g: Generator,
    U: Optional[Interval] = None,
    n_max: Optional[int] = None,
) -> float:
    U = U or f.domain
    return lower_main_partitioned_entry(f, g, U, PairMeasures.measure(f, g, U), n_max).value


# Profil de convergence

def convergence_profile(
    f: Generator,
    gs: Sequence[Generator],
    U: Interval,
    cfg: Optional[OptimizerConfig] = None,
) -> List[ConvergencePoint]:
    """
    Pour une suite g_n, ε_n = ‖A f - A g_n‖∗ et ρ_n mesuré, encadré par la
    borne principale et la borne des ∗-normes.
    """
    profile = []
    for g in gs:
        measures = PairMeasures.measure(f, g, U)
        rho = estimate_rho(f, g, U, cfg)
        upper = upper_star_norm_entry(measures)
        profile.append(ConvergencePoint(
            label=g.label,
            epsilon=measures.epsilon,
            rho=rho.value,
            lower_main=lower_main_entry(measures).value,
            upper_star_norm=upper.value if upper.applicable else None,
        ))
    return profile


__all__ = [
    'PairMeasures',
    'measure_K',
    'in_family_k',
    'main_bound_ceiling',
    'upper_star_norm',
    'upper_star_norm_entry',
    'upper_universal',
    'upper_universal_entries',
    'lower_main',
    'lower_main_entry',
    'lower_main_from',
    'lower_main_sup',
    'lower_main_sup_entry',
    'lower_estim',
    'lower_estim_entry',
    'lower_estim_from',
    'lower_main_partitioned',
    'lower_main_partitioned_entry',
    'convergence_profile',
]
