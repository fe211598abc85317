"""
Rapport complet des bornes d'un couple de générateurs.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from ..config.config import OptimizerConfig, resolve_threads
from ..generators.base import Generator
from ..generators.interval import Interval
from ..referentials import LOWER_BOUND_NAMES, SANDWICH_SLACK, UPPER_BOUND_NAMES
from ..rho import check_domains, estimate_rho
from ..schemas.results import BoundEntry, BoundReport
from ..utils.errors import QAMError
from .arrow_pratt import (
    PairMeasures,
    lower_estim_entry,
    lower_main_entry,
    lower_main_partitioned_entry,
    lower_main_sup_entry,
    upper_star_norm_entry,
    upper_universal_entries,
)
from .classical import cargo_shisha_lower, cargo_shisha_upper_entry, pales_entry
from .separation import separation_entries

logger = logging.getLogger(__name__)

ADVISORY_NAMES = ("pales_check",)

EntryTask = Callable[[], Sequence[BoundEntry]]


def _kind(name: str) -> str:
    if name in LOWER_BOUND_NAMES:
        return 'lower'
    if name in UPPER_BOUND_NAMES:
        return 'upper'
    return 'advisory'


def _run_task(names: Sequence[str], task: EntryTask) -> List[BoundEntry]:
    """Exécute une tâche; une erreur rend ses entrées non applicables."""
    try:
        return list(task())
    except QAMError as e:
        logger.warning(f"Bound {', '.join(names)} not applicable: {e}")
        return [BoundEntry.not_applicable(name, _kind(name), str(e)) for name in names]


def _tasks(f: Generator, g: Generator, U: Interval, measures: PairMeasures) -> Dict[tuple, EntryTask]:
    def classical_lower():
        return [BoundEntry(name='cargo_shisha_lower', kind='lower', value=cargo_shisha_lower(f, g, U))]

    return {
        ('cargo_shisha_lower',): classical_lower,
        ('lower_main',): lambda: [lower_main_entry(measures)],
        ('lower_main_sup',): lambda: [lower_main_sup_entry(measures)],
        ('lower_main_partitioned',): lambda: [lower_main_partitioned_entry(f, g, U, measures)],
        ('lower_estim',): lambda: [lower_estim_entry(measures)],
        ('box_lower', 'box_lower_simplified'): lambda: separation_entries(f, g, U),
        ('cargo_shisha_upper',): lambda: [cargo_shisha_upper_entry(f, g, U)],
        ('upper_star_norm',): lambda: [upper_star_norm_entry(measures)],
        ('upper_universal_log', 'upper_universal_quadratic'): lambda: upper_universal_entries(measures),
        ADVISORY_NAMES: lambda: [pales_entry(f, g, U)],
    }


def full_report(
    f: Generator,
    g: Generator,
    U: Interval,
    cfg: Optional[OptimizerConfig] = None,
    check: bool = True,
) -> BoundReport:
    """
    Mesure ρ, K, ε et toutes les bornes du couple sur U.

    Les entrées sont calculées en parallèle et assemblées dans un ordre fixe
    (bornes inférieures, supérieures, puis consultatives). Une borne en
    échec est marquée non applicable avec la raison.

    Args:
        f, g: Générateurs
        U: Intervalle inclus dans les deux domaines
        cfg: Paramètres de la recherche de ρ
        check: Vérifie l'encadrement max(inf) ≤ ρ ≤ min(sup)

    Returns:
        BoundReport

    Raises:
        ValidationError: Si U n'est pas inclus dans les deux domaines
        PropertyViolation: Si check et l'encadrement échoue
    """
    check_domains(f, g, U)
    logger.info(f"Bound report for {f.label} / {g.label} on {U}")
    measures = PairMeasures.measure(f, g, U)
    rho = estimate_rho(f, g, U, cfg)

    tasks = _tasks(f, g, U, measures)
    with ThreadPoolExecutor(max_workers=resolve_threads()) as executor:
        futures = {names: executor.submit(_run_task, names, task) for names, task in tasks.items()}
        produced = {}
        for names, future in futures.items():
            for entry in future.result():
                produced[entry.name] = entry

    order = LOWER_BOUND_NAMES + UPPER_BOUND_NAMES + ADVISORY_NAMES
    report = BoundReport(
        pair=(f.label, g.label),
        interval=U,
        K=measures.K,
        epsilon=measures.epsilon,
        rho=rho,
        bounds=[produced[name] for name in order],
    )
    logger.debug(f"Report {f.label}/{g.label}: rho={rho.value:.17g}, K={measures.K:.17g}, eps={measures.epsilon:.17g}")
    if check:
        report.check_sandwich(SANDWICH_SLACK)
    return report


__all__ = ['full_report']
