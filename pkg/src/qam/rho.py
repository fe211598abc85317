"""
Mesure numérique de la distance de Cargo-Shisha

    ρ(A[f], A[g]) = sup |A[f]_θ(z, x) - A[g]_θ(z, x)|  sur x, z ∈ U, θ ∈ [0, 1].

Le sup est atteint sur des vecteurs à deux entrées: la recherche porte donc
sur (x, z, θ). Grille N×N×M puis raffinement coordonnée par coordonnée par
section dorée. La valeur retournée est une estimation inférieure du sup.

Le sup peut se trouver à θ ~ 1e-7 (exp(15) / exp(20) sur (0, 1)): la grille
en θ est prolongée par des queues logarithmiques jusqu'à THETA_FLOOR de
chaque bord, et le raffinement en θ se fait sur s = logit(θ).
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.special import expit, logit

from .config.config import OptimizerConfig, resolve_threads
from .generators.base import Generator, common_scan_bounds
from .generators.interval import Interval
from .means import two_point_mean
from .referentials import THETA_FLOOR, THETA_TAIL_POINTS
from .schemas.results import RestrictionCheck, RhoEstimate
from .utils.errors import NumericError, ValidationError, handle_numeric_errors
from .utils.optimize import golden_section_search, grid_argmax

logger = logging.getLogger(__name__)


def check_domains(f: Generator, g: Generator, U: Interval) -> None:
    for generator in (f, g):
        if not U.is_subset_of(generator.domain.closure()):
            raise ValidationError(
                f"{U} is not contained in the domain {generator.domain} of {generator.label}"
            )


def theta_grid(theta_min: float, points: int, tail: int = THETA_TAIL_POINTS) -> np.ndarray:
    """
    Grille croissante en θ: points valeurs uniformes sur [θ_min, 1 - θ_min],
    plus tail valeurs log-espacées de THETA_FLOOR à θ_min (exclu) près de
    chaque bord.
    """
    uniform = np.linspace(theta_min, 1.0 - theta_min, points)
    low = np.geomspace(THETA_FLOOR, theta_min, tail, endpoint=False)
    return np.unique(np.concatenate([low, uniform, 1.0 - low]))


def _objective_grid(f: Generator, g: Generator, x: np.ndarray, z: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """|A[f]_θ(z, x) - A[g]_θ(z, x)| sur la grille produit, de forme (len(x), len(z), len(theta))."""
    xs = x[:, None, None]
    zs = z[None, :, None]
    ts = theta[None, None, :]
    return np.abs(two_point_mean(f, zs, xs, ts) - two_point_mean(g, zs, xs, ts))


def _scan(f: Generator, g: Generator, x: np.ndarray, z: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Évaluation de la grille découpée par lignes de x sur le pool de threads, recollée dans l'ordre."""
    workers = min(resolve_threads(), len(x))
    chunks = np.array_split(np.arange(len(x)), max(workers, 1))
    chunks = [c for c in chunks if len(c)]
    if len(chunks) <= 1:
        return _objective_grid(f, g, x, z, theta)
    with ThreadPoolExecutor(max_workers=len(chunks)) as executor:
        parts = list(executor.map(lambda c: _objective_grid(f, g, x[c], z, theta), chunks))
    return np.concatenate(parts, axis=0)


def _neighbour_step(grid: np.ndarray, k: int) -> float:
    """Plus grand écart entre grid[k] et ses voisins immédiats."""
    below = grid[k] - grid[max(k - 1, 0)]
    above = grid[min(k + 1, len(grid) - 1)] - grid[k]
    return float(max(below, above))


class _Refiner:
    """Montée coordonnée par coordonnée par section dorée en (x, z, s), θ = expit(s)."""

    def __init__(
        self,
        f: Generator,
        g: Generator,
        box: Tuple[Tuple[float, float], ...],
        tols: Sequence[float],
    ):
        self.f = f
        self.g = g
        self.box = box
        self.tols = tuple(tols)
        self.evaluations = 0

    def value(self, point) -> float:
        x, z, s = point
        theta = float(expit(s))
        self.evaluations += 1
        result = abs(two_point_mean(self.f, z, x, theta) - two_point_mean(self.g, z, x, theta))
        if not np.isfinite(result):
            raise NumericError("Non-finite rho objective", point=(float(x), float(z), theta))
        return float(result)

    def _converged(self, steps) -> bool:
        return all(step < tol for step, tol in zip(steps, self.tols))

    def run(self, start, steps, max_iters: int):
        point = list(start)
        best = self.value(point)
        previous = best
        steps = list(steps)
        iterations = 0
        while not self._converged(steps) and iterations < max_iters:
            iterations += 1
            previous = best
            for axis in range(3):
                lo_box, hi_box = self.box[axis]
                lo = max(lo_box, point[axis] - steps[axis])
                hi = min(hi_box, point[axis] + steps[axis])
                if hi <= lo:
                    steps[axis] = 0.0
                    continue

                def along(t, axis=axis):
                    trial = list(point)
                    trial[axis] = t
                    return self.value(trial)

                t, v = golden_section_search(along, lo, hi, tol=self.tols[axis], maximize=True)
                moved = abs(t - point[axis])
                if v > best:
                    point[axis] = t
                    best = v
                # le pas est conservé tant que l'optimum touche le bord du crochet
                if moved < 0.5 * steps[axis]:
                    steps[axis] = 0.5 * steps[axis]
            if best == previous and self._converged(steps):
                break
        return tuple(point), best, abs(best - previous), iterations


@handle_numeric_errors
def estimate_rho(
    f: Generator,
    g: Generator,
    U: Interval,
    cfg: Optional[OptimizerConfig] = None,
) -> RhoEstimate:
    """
    Estime ρ(A[f], A[g]) sur U.

    Args:
        f, g: Générateurs définis sur U
        U: Intervalle commun
        cfg: Paramètres de grille et de raffinement (par défaut l'environnement)

    Returns:
        RhoEstimate, estimation inférieure du sup avec son argument

    Raises:
        ValidationError: Si U n'est pas inclus dans les deux domaines
        NumericError: Si l'objectif n'est pas fini en un point
    """
    cfg = cfg or OptimizerConfig.from_settings()
    check_domains(f, g, U)
    lo, hi = common_scan_bounds(f, g, U)
    tol = cfg.absolute_tol(U.length())

    x = np.linspace(lo, hi, cfg.grid_n)
    theta = theta_grid(cfg.theta_min, cfg.grid_m)
    values = _scan(f, g, x, x, theta)

    bad = ~np.isfinite(values)
    if bad.any():
        i, j, k = grid_argmax(bad)
        raise NumericError("Non-finite rho objective", point=(float(x[i]), float(x[j]), float(theta[k])))

    i, j, k = grid_argmax(values)
    grid_best = float(values[i, j, k])
    logger.debug(
        f"rho grid {cfg.grid_n}x{cfg.grid_n}x{len(theta)} for {f.label}/{g.label} on {U}: "
        f"best {grid_best:.17g} at {(float(x[i]), float(x[j]), float(theta[k]))}"
    )

    s = logit(theta)
    start = (float(x[i]), float(x[j]), float(s[k]))
    x_step = (hi - lo) / max(cfg.grid_n - 1, 1)
    steps = (x_step, x_step, _neighbour_step(s, k))
    box = ((lo, hi), (lo, hi), (float(s[0]), float(s[-1])))
    refiner = _Refiner(f, g, box, (tol, tol, cfg.tol_rel))
    point, best, gap, sweeps = refiner.run(start, steps, cfg.max_refine_iters)
    if best < grid_best:
        point, best = start, grid_best

    x_best, z_best, s_best = point
    theta_best = float(expit(s_best))
    edge = 2.0 * tol
    on_boundary = (
        min(abs(x_best - lo), abs(x_best - hi)) <= edge
        or min(abs(z_best - lo), abs(z_best - hi)) <= edge
        or min(abs(s_best - s[0]), abs(s_best - s[-1])) <= 2.0 * cfg.tol_rel
    )
    arg = (float(x_best), float(z_best), theta_best)
    if on_boundary:
        logger.info(f"rho argmax for {f.label}/{g.label} lies on the boundary of the search box: {arg}")

    return RhoEstimate(
        value=best,
        arg=arg,
        refinement_gap=gap,
        evaluations=int(values.size) + refiner.evaluations,
        on_boundary=bool(on_boundary),
    )


def rho_restricted_monotone(
    f: Generator,
    g: Generator,
    U: Interval,
    V: Interval,
    cfg: Optional[OptimizerConfig] = None,
) -> RestrictionCheck:
    """
    Vérifie ρ(A[f|_V], A[g|_V]) ≤ ρ(A[f], A[g]) à deux tolérances de raffinement près.

    Raises:
        ValidationError: Si V n'est pas inclus dans U
    """
    if not V.is_subset_of(U.closure()):
        raise ValidationError(f"{V} is not contained in {U}")
    cfg = cfg or OptimizerConfig.from_settings()
    value_u = estimate_rho(f, g, U, cfg).value
    value_v = estimate_rho(f, g, V, cfg).value
    tolerance = 2.0 * cfg.absolute_tol(U.length())
    holds = value_v <= value_u + tolerance
    if not holds:
        logger.warning(f"Restriction check failed: rho on {V} = {value_v:.17g} > rho on {U} = {value_u:.17g}")
    return RestrictionCheck(holds=holds, value_u=value_u, value_v=value_v, tolerance=tolerance)


__all__ = ['check_domains', 'theta_grid', 'estimate_rho', 'rho_restricted_monotone']
