"""
Séparation (φ, K, δ) et bornes inférieures associées.

Un couple est (φ, K, δ)-séparé s'il existe un intervalle fermé V ⊂ U de
longueur φ sur lequel |A f| ≤ K, |A g| ≤ K et |A f - A g| ≥ δ. La borne
(1/K)·ln(1 + Kα) en découle, ainsi que sa forme simplifiée par Θ.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..config.config import get_settings
from ..generators.base import Generator, arrow_pratt, common_scan_bounds
from ..generators.interval import Interval
from ..schemas.results import BoundEntry, SeparationCertificate
from ..utils.errors import ValidationError, handle_numeric_errors
from ..utils.validators import validate_grid_size, validate_positive

logger = logging.getLogger(__name__)

DELTA_LIMIT_REL = 1e-8
NO_SEPARATION_REL = 1e-12
CELL_SAMPLES = 16


def theta(x):
    """Θ(x) = 1 - e^{-x} - x·e^{-x}."""
    x = np.asarray(x, dtype=float)
    value = -np.expm1(-x) - x * np.exp(-x)
    if np.ndim(value) == 0:
        return float(value)
    return value


def box_alpha(phi: float, K: float, delta: float) -> float:
    """
    α = (e^{-Kφ/2} - 1)/K - (e^{(δ-K)φ/2} - 1)/(K - δ).

    Le second terme est remplacé par sa limite -φ/2 quand |K - δ| < 1e-8·K.
    """
    first = math.expm1(-K * phi / 2.0) / K
    if abs(K - delta) < DELTA_LIMIT_REL * K:
        second = -phi / 2.0
    else:
        second = math.expm1((delta - K) * phi / 2.0) / (K - delta)
    return first - second


def _check_parameters(phi: float, K: float, delta: float) -> Tuple[float, float, float]:
    phi = validate_positive("phi", phi)
    K = validate_positive("K", K)
    delta = validate_positive("delta", delta)
    if delta > 2.0 * K:
        raise ValidationError(f"delta doit être ≤ 2K. Reçu : delta={delta}, K={K}")
    return phi, K, delta


def box_lower_value(phi: float, K: float, delta: float) -> float:
    """(1/K)·ln(1 + Kα); 0 quand α ≤ 0."""
    phi, K, delta = _check_parameters(phi, K, delta)
    alpha = box_alpha(phi, K, delta)
    if alpha <= 0:
        logger.warning(f"Degenerate separation (phi={phi}, K={K}, delta={delta}): alpha={alpha:.3e}")
        return 0.0
    return math.log1p(K * alpha) / K


def box_lower_simplified_value(phi: float, K: float, delta: float) -> float:
    """(1/K)·ln(1 + (δ/K)·Θ(Kφ/2))."""
    phi, K, delta = _check_parameters(phi, K, delta)
    return math.log1p(delta / K * theta(K * phi / 2.0)) / K


def box_lower(cert: SeparationCertificate) -> float:
    """
    Borne inférieure de ρ pour un couple (φ, K, δ)-séparé.

    Args:
        cert: Certificat de séparation

    Returns:
        (1/K)·ln(1 + Kα), 0 si α ≤ 0 (cas dégénéré, signalé dans les logs)
    """
    return box_lower_value(cert.phi, cert.K, cert.delta)


def box_lower_simplified(cert: SeparationCertificate) -> float:
    """Forme simplifiée par Θ, jamais supérieure à box_lower."""
    return box_lower_simplified_value(cert.phi, cert.K, cert.delta)


def _cell_extremes(f: Generator, g: Generator, edges: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Par cellule [e_i, e_{i+1}]: max de max(|A f|, |A g|) et min de |A f - A g|."""
    cells = len(edges) - 1
    offsets = np.linspace(0.0, 1.0, CELL_SAMPLES + 1)
    points = edges[:-1, None] + (edges[1:, None] - edges[:-1, None]) * offsets[None, :]
    index_f = arrow_pratt(f, points.ravel()).reshape(cells, -1)
    index_g = arrow_pratt(g, points.ravel()).reshape(cells, -1)
    size = np.maximum(np.abs(index_f), np.abs(index_g)).max(axis=1)
    gap = np.abs(index_f - index_g).min(axis=1)
    return size, gap


def _verify(f: Generator, g: Generator, V: Interval, K: float, delta: float, points: int):
    x = np.linspace(V.lo, V.hi, points)
    index_f = arrow_pratt(f, x)
    index_g = arrow_pratt(g, x)
    sup_f = float(np.abs(index_f).max())
    sup_g = float(np.abs(index_g).max())
    inf_gap = float(np.abs(index_f - index_g).min())
    return sup_f, sup_g, inf_gap


@handle_numeric_errors
def find_separation(
    f: Generator,
    g: Generator,
    U: Interval,
    phi_grid: Optional[int] = None,
) -> Optional[SeparationCertificate]:
    """
    Recherche de l'intervalle V maximisant la borne simplifiée.

    Les extrémités candidates forment un réseau de phi_grid points sur U.
    K_V et δ_V viennent d'un échantillonnage fin de chaque cellule du réseau;
    le meilleur V est ensuite revérifié sur QAM_VERIFY_POINTS points, avec
    K relevé au max et δ abaissé au min observés.

    Args:
        f, g: Générateurs
        U: Intervalle commun
        phi_grid: Taille du réseau d'extrémités (par défaut QAM_PHI_GRID)

    Returns:
        Le certificat, ou None si |A f - A g| ne se sépare de 0 sur aucun V
    """
    numerics = get_settings().numerics
    phi_grid = validate_grid_size("phi_grid", phi_grid or numerics['phi_grid'])
    lo, hi = common_scan_bounds(f, g, U)
    edges = np.linspace(lo, hi, phi_grid)
    size, gap = _cell_extremes(f, g, edges)

    best = (0.0, None)
    cells = len(edges) - 1
    for i in range(cells):
        K_run, delta_run = 0.0, math.inf
        for j in range(i, cells):
            K_run = max(K_run, float(size[j]))
            delta_run = min(delta_run, float(gap[j]))
            if delta_run <= NO_SEPARATION_REL * max(1.0, K_run):
                break
            phi = float(edges[j + 1] - edges[i])
            value = box_lower_simplified_value(phi, K_run, min(delta_run, 2.0 * K_run))
            if value > best[0]:
                best = (value, (i, j + 1, K_run, delta_run))

    if best[1] is None:
        logger.info(f"No separation found for {f.label}/{g.label} on {U}")
        return None

    i, j, K, delta = best[1]
    V = Interval(float(edges[i]), float(edges[j]))
    sup_f, sup_g, inf_gap = _verify(f, g, V, K, delta, numerics['verify_points'])
    K = max(K, sup_f, sup_g)
    delta = min(delta, inf_gap, 2.0 * K)
    if delta <= NO_SEPARATION_REL * max(1.0, K):
        logger.info(f"Separation of {f.label}/{g.label} on {V} vanished on the verification grid")
        return None

    certificate = SeparationCertificate(
        V=V,
        phi=V.length(),
        K=K,
        delta=delta,
        residuals={
            'K_minus_sup_f': K - sup_f,
            'K_minus_sup_g': K - sup_g,
            'inf_gap_minus_delta': inf_gap - delta,
        },
    )
    logger.debug(f"Separation of {f.label}/{g.label}: V={V}, K={K:.17g}, delta={delta:.17g}")
    return certificate


def separation_entries(f: Generator, g: Generator, U: Interval):
    """Entrées box_lower et box_lower_simplified du rapport (0 sans séparation)."""
    cert = find_separation(f, g, U)
    if cert is None:
        params = {'separated': False}
        return (
            BoundEntry(name='box_lower', kind='lower', value=0.0, params=params),
            BoundEntry(name='box_lower_simplified', kind='lower', value=0.0, params=params),
        )
    params = {'separated': True, 'V': [cert.V.lo, cert.V.hi], 'phi': cert.phi, 'K': cert.K, 'delta': cert.delta}
    alpha = box_alpha(cert.phi, cert.K, cert.delta)
    return (
        BoundEntry(name='box_lower', kind='lower', value=box_lower(cert),
                   params=dict(params, alpha=alpha, degenerate=alpha <= 0)),
        BoundEntry(name='box_lower_simplified', kind='lower', value=box_lower_simplified(cert),
                   params=dict(params, theta=theta(cert.K * cert.phi / 2.0))),
    )


__all__ = [
    'theta',
    'box_alpha',
    'box_lower_value',
    'box_lower_simplified_value',
    'box_lower',
    'box_lower_simplified',
    'find_separation',
    'separation_entries',
]
