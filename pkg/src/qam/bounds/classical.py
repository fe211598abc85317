"""
Bornes classiques de Cargo-Shisha et test suffisant de Páles.

Les générateurs sont ramenés sur [0, 1] → [0, 1] par un changement de
variable affine puis une normalisation affine; ρ se multiplie alors par |U|.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..config.config import get_settings
from ..generators.base import Generator, affine_normalize, common_scan_bounds, reparametrize, restrict
from ..generators.interval import UNIT_INTERVAL, Interval
from ..referentials import PALES_DEFAULT_C, PALES_SKIP_REL
from ..schemas.results import BoundEntry, PalesEvidence
from ..utils.errors import QAMError, handle_numeric_errors
from ..utils.optimize import oscillation, sup_abs
from ..utils.validators import validate_open_unit, validate_positive

logger = logging.getLogger(__name__)

UNBOUNDED_SHRINK = 1000.0
UNBOUNDED_LOG_CHANGE = math.log(1.01)
UNBOUNDED_FLOOR = 1e-300


def normalized(f: Generator, U: Interval) -> Generator:
    """f|_U ramené sur le carré unité: domaine [0, 1], image [0, 1], croissant."""
    return affine_normalize(reparametrize(restrict(f, U), UNIT_INTERVAL), UNIT_INTERVAL)


def _inverse_on_unit(f_hat: Generator):
    def inverse(y):
        return np.clip(f_hat.inverse(y), 0.0, 1.0)
    return inverse


@handle_numeric_errors
def cargo_shisha_lower(f: Generator, g: Generator, U: Optional[Interval] = None) -> float:
    """
    Borne inférieure ρ ≥ |U|·‖f̂⁻¹ - ĝ⁻¹‖∞ sur [0, 1].

    Args:
        f, g: Générateurs
        U: Intervalle commun (par défaut le domaine de f)

    Returns:
        La borne, ≥ 0
    """
    U = U or f.domain
    f_hat, g_hat = normalized(f, U), normalized(g, U)
    f_inv, g_inv = _inverse_on_unit(f_hat), _inverse_on_unit(g_hat)
    numerics = get_settings().numerics
    value, y = sup_abs(lambda t: f_inv(t) - g_inv(t), 0.0, 1.0, numerics['scan_points'])
    logger.debug(f"Cargo-Shisha lower for {f.label}/{g.label} on {U}: {value:.17g} at y={y:.6g}")
    return U.length() * value


def _min_log_derivative(f: Generator, lo: float, hi: float) -> float:
    numerics = get_settings().numerics
    osc = oscillation(f.log_abs_derivative, lo, hi, numerics['scan_points'], tol=1e-12 * (hi - lo))
    return osc.f_min


def _derivative_bounded_below(f: Generator, U: Interval) -> bool:
    """
    inf |f′| > 0 sur U, contrôlé par un second balayage à marge réduite
    quand f ne se prolonge pas aux bords ouverts.
    """
    lo, hi = f.scan_bounds(U)
    reference = _min_log_derivative(f, lo, hi)
    if not math.isfinite(reference) or reference <= math.log(UNBOUNDED_FLOOR):
        return False
    if f.extends_to_closure or (lo == U.lo and hi == U.hi):
        return True
    shrink_lo = U.lo + (lo - U.lo) / UNBOUNDED_SHRINK
    shrink_hi = U.hi - (U.hi - hi) / UNBOUNDED_SHRINK
    try:
        closer = _min_log_derivative(f, shrink_lo, shrink_hi)
    except QAMError:
        return False
    return math.isfinite(closer) and abs(closer - reference) <= UNBOUNDED_LOG_CHANGE


def _one_sided_upper(f: Generator, g: Generator, U: Interval) -> Tuple[float, float, float]:
    f_hat, g_hat = normalized(f, U), normalized(g, U)
    numerics = get_settings().numerics
    lo, hi = common_scan_bounds(f_hat, g_hat, UNIT_INTERVAL)
    min_log = _min_log_derivative(f_hat, *f_hat.scan_bounds())
    inverse_slope = math.exp(-min_log)
    gap, _ = sup_abs(lambda t: f_hat.eval(t) - g_hat.eval(t), lo, hi, numerics['scan_points'])
    return U.length() * 2.0 * inverse_slope * gap, inverse_slope, gap


@handle_numeric_errors
def cargo_shisha_upper_entry(f: Generator, g: Generator, U: Optional[Interval] = None) -> BoundEntry:
    """
    Borne supérieure ρ ≤ |U|·2‖(f̂⁻¹)′‖∞·‖f̂ - ĝ‖∞, symétrisée par le min.

    Non applicable quand (f̂⁻¹)′ n'est pas bornée pour les deux orientations.
    """
    U = U or f.domain
    candidates = {}
    for name, first, second in (("f", f, g), ("g", g, f)):
        if not _derivative_bounded_below(first, U):
            logger.debug(f"(normalize({first.label})^-1)' is unbounded on {U}")
            continue
        value, slope, gap = _one_sided_upper(first, second, U)
        if math.isfinite(value):
            candidates[name] = {'value': value, 'inverse_slope': slope, 'sup_gap': gap}

    if not candidates:
        return BoundEntry.not_applicable(
            'cargo_shisha_upper', 'upper', "inverse derivative unbounded for both orientations"
        )
    best = min(candidates, key=lambda k: candidates[k]['value'])
    params = {f"value_{k}": v['value'] for k, v in candidates.items()}
    params.update(direction=best, inverse_slope=candidates[best]['inverse_slope'],
                  sup_gap=candidates[best]['sup_gap'])
    return BoundEntry(name='cargo_shisha_upper', kind='upper', value=candidates[best]['value'], params=params)


def cargo_shisha_upper(f: Generator, g: Generator, U: Optional[Interval] = None) -> float:
    """Valeur de la borne supérieure de Cargo-Shisha, math.inf si non applicable."""
    entry = cargo_shisha_upper_entry(f, g, U)
    return entry.value if entry.applicable else math.inf


@handle_numeric_errors
def pales_sufficient_check(
    f: Generator,
    g: Generator,
    U: Interval,
    alpha: float,
    C: float = PALES_DEFAULT_C,
    grid: Optional[int] = None,
) -> PalesEvidence:
    """
    Test de grille du critère de Páles: si, pour tous x, y, z de U avec
    |x - z| ≥ α, les rapports (f(x)-f(y))/(f(x)-f(z)) et (g(x)-g(y))/(g(x)-g(z))
    diffèrent de moins de C < 1, alors ρ ≤ α.

    Ce n'est qu'un indice sur une grille finie. Les triplets dont le
    dénominateur est négligeable devant l'oscillation sont ignorés.

    Args:
        f, g: Générateurs
        U: Intervalle commun
        alpha: Écart minimal |x - z|
        C: Seuil dans (0, 1)
        grid: Points par axe (par défaut QAM_PALES_GRID)

    Raises:
        ValidationError: Si alpha <= 0 ou C hors de (0, 1)
    """
    alpha = validate_positive("alpha", alpha)
    C = validate_open_unit("C", C)
    grid = grid or get_settings().numerics['pales_grid']

    lo, hi = common_scan_bounds(f, g, U)
    points = np.linspace(lo, hi, grid)
    if alpha > hi - lo:
        logger.debug(f"Pales check on {U}: no triple with |x - z| >= {alpha}")
        return PalesEvidence(holds=True, vacuous=True, alpha=alpha, C=C)

    fx = np.asarray(f.eval(points), dtype=float)
    gx = np.asarray(g.eval(points), dtype=float)
    skip_f = PALES_SKIP_REL * float(fx.max() - fx.min())
    skip_g = PALES_SKIP_REL * float(gx.max() - gx.min())

    x = points[:, None, None]
    z = points[None, None, :]
    admissible = np.abs(x - z) >= alpha * (1.0 - 1e-12)
    num_f = fx[:, None, None] - fx[None, :, None]
    den_f = fx[:, None, None] - fx[None, None, :]
    num_g = gx[:, None, None] - gx[None, :, None]
    den_g = gx[:, None, None] - gx[None, None, :]
    usable = admissible & (np.abs(den_f) >= skip_f) & (np.abs(den_g) >= skip_g)
    usable = np.broadcast_to(usable, (grid, grid, grid))
    if not usable.any():
        return PalesEvidence(holds=True, vacuous=True, alpha=alpha, C=C)

    with np.errstate(all="ignore"):
        difference = np.abs(num_f / den_f - num_g / den_g)
    worst = float(difference[usable].max())
    evidence = PalesEvidence(
        holds=bool(worst < C),
        vacuous=False,
        max_difference=worst,
        triples=int(usable.sum()),
        alpha=alpha,
        C=C,
    )
    logger.debug(f"Pales check {f.label}/{g.label} on {U}: {evidence}")
    return evidence


def pales_entry(f: Generator, g: Generator, U: Interval) -> BoundEntry:
    """Entrée consultative du rapport, α = |U|/2 et C = 0.99."""
    evidence = pales_sufficient_check(f, g, U, alpha=0.5 * U.length(), C=PALES_DEFAULT_C)
    return BoundEntry(
        name='pales_check',
        kind='advisory',
        value=evidence.alpha if evidence.holds else None,
        applicable=evidence.holds,
        params=evidence.dict(),
        reason=None if evidence.holds else "triple-ratio difference reaches C on the grid",
    )


__all__ = [
    'normalized',
    'cargo_shisha_lower',
    'cargo_shisha_upper',
    'cargo_shisha_upper_entry',
    'pales_sufficient_check',
    'pales_entry',
]
