"""
Suites de propriétés exécutées par les commandes `verify` et `table`.

Chaque suite renvoie un SuiteResult: nombre de contrôles et liste des
échecs. Les tirages aléatoires partent d'un numpy Generator initialisé par
QAM_SEED, les résultats sont donc reproductibles.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .bounds.arrow_pratt import convergence_profile, lower_estim, lower_main
from .bounds.report import full_report
from .bounds.separation import box_lower, box_lower_simplified
from .config.config import OptimizerConfig, get_settings, resolve_threads
from .generators.base import Generator, affine_combination, common_scan_bounds
from .generators.builtins import generator_from_spec
from .generators.interval import Interval
from .means import affine_equivalent, comparison_check, exp_mean, qa_mean, two_point_mean
from .norms import partition_subinterval, star_norm
from .referentials import (
    CORPUS_EXP_INTERVAL,
    CORPUS_EXP_PARAMETERS,
    CORPUS_EXPRESSIONS,
    CORPUS_POWER_INTERVAL,
    CORPUS_POWER_PARAMETERS,
    MEAN_TOLERANCE,
    ORACLE_GRID,
    ORACLE_PAIRS,
    ORACLE_TOLERANCE,
    PARTITION_SLACK,
    SANDWICH_SLACK,
    THETA_FLOOR,
    WORKED_EXAMPLE_CERTIFICATE,
    WORKED_EXAMPLE_INTERVAL,
    WORKED_EXAMPLE_PAIR,
    WORKED_EXAMPLE_TABLE,
)
from .rho import estimate_rho, rho_restricted_monotone
from .schemas.results import SeparationCertificate, SuiteResult, TableRow
from .schemas.sample import WeightedSample
from .utils.errors import QAMError, ValidationError

logger = logging.getLogger(__name__)

AFFINE_EXP_PARAMETERS = (-5.0, -1.0, 0.0, 1.0, 5.0)
CONVERGENCE_BASE = 5.0
CONVERGENCE_STEPS = (1, 2, 4, 8, 16)
RESTRICTION_SUBINTERVAL = Interval(0.25, 0.75)
MAIN_SUP_SLACK = 1e-15

Pair = Tuple[Generator, Generator, Interval]


def _exp_spec(s: float) -> str:
    return f"exp:{s:g}"


def _power_spec(s: float) -> str:
    return f"pow:{s:g}"


def corpus_groups(selector: str = "default") -> List[Tuple[Interval, List[Generator]]]:
    """
    Générateurs du corpus, groupés par intervalle commun.

    - exp: e_s pour s du corpus sur (0,1)
    - power: p_s et les trois expressions sur [1,2]
    - default: exp et power
    - all: default plus la famille exp sur [1,2]

    Raises:
        ValidationError: Si le sélecteur est inconnu
    """
    if selector not in ("default", "exp", "power", "all"):
        raise ValidationError(f"Unknown corpus selector '{selector}'")
    groups = []
    if selector in ("default", "exp", "all"):
        U = Interval.parse(CORPUS_EXP_INTERVAL)
        groups.append((U, [generator_from_spec(_exp_spec(s), U) for s in CORPUS_EXP_PARAMETERS]))
    if selector in ("default", "power", "all"):
        U = Interval.parse(CORPUS_POWER_INTERVAL)
        generators = [generator_from_spec(_power_spec(s), U) for s in CORPUS_POWER_PARAMETERS]
        generators += [generator_from_spec(f"expr:{text}", U) for text in CORPUS_EXPRESSIONS]
        groups.append((U, generators))
    if selector == "all":
        U = Interval.parse(CORPUS_POWER_INTERVAL)
        groups.append((U, [generator_from_spec(_exp_spec(s), U) for s in CORPUS_EXP_PARAMETERS]))
    return groups


def corpus_pairs(selector: str = "default") -> List[Pair]:
    """Toutes les paires non ordonnées de générateurs distincts de chaque groupe."""
    pairs = []
    for U, generators in corpus_groups(selector):
        for i, f in enumerate(generators):
            for g in generators[i + 1:]:
                pairs.append((f, g, U))
    return pairs


def _within(value: Optional[float], published: float, check: Sequence) -> bool:
    if value is None or not math.isfinite(value):
        return False
    if check[0] == 'band':
        return check[1] <= value <= check[2]
    return abs(value - published) <= check[1] * abs(published)


def _random_sample(rng: np.random.Generator, U: Interval, size: int) -> WeightedSample:
    lo, hi = U.lo, U.hi
    values = rng.uniform(lo, hi, size)
    values = np.clip(values, np.nextafter(lo, hi), np.nextafter(hi, lo))
    weights = rng.dirichlet(np.ones(size))
    return WeightedSample(values=values.tolist(), weights=weights.tolist())


def _random_integrand(rng: np.random.Generator) -> Callable[[np.ndarray], np.ndarray]:
    """Somme aléatoire de sinusoïdes et d'une pente, intégrande lisse."""
    amplitudes = rng.normal(0.0, 1.0, 4)
    frequencies = rng.uniform(0.5, 10.0, 4)
    phases = rng.uniform(0.0, 2.0 * math.pi, 4)
    slope = rng.normal(0.0, 0.5)

    def u(t):
        t = np.asarray(t, dtype=float)
        waves = amplitudes[:, None] * np.sin(frequencies[:, None] * np.ravel(t)[None, :] + phases[:, None])
        return (waves.sum(axis=0) + slope * np.ravel(t)).reshape(np.shape(t))

    return u


class VerificationService:
    """Exécution des suites de propriétés sur le corpus."""

    def __init__(
        self,
        cfg: Optional[OptimizerConfig] = None,
        seed: Optional[int] = None,
        trials: Optional[int] = None,
        partition_trials: Optional[int] = None,
    ):
        verification = get_settings().verification
        self.cfg = cfg or OptimizerConfig.from_settings()
        self.seed = verification['seed'] if seed is None else seed
        self.trials = trials or verification['trials']
        self.partition_trials = partition_trials or verification['partition_trials']
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    def _rng(self, offset: int) -> np.random.Generator:
        return np.random.default_rng(self.seed + offset)

    # Encadrement

    def _sandwich_pair(self, pair: Pair) -> Tuple[int, List[str]]:
        f, g, U = pair
        name = f"{f.label} / {g.label} on {U}"
        try:
            report = full_report(f, g, U, self.cfg, check=False)
        except QAMError as e:
            return 1, [f"{name}: {e}"]

        failures = [f"{name}: {problem}" for problem in report.sandwich_violations(SANDWICH_SLACK)]
        checks = len(report.lower_values()) + len(report.upper_values())

        checks += 1
        limit = 2.0 * report.K * U.length()
        if report.epsilon > limit * (1.0 + 1e-9) + 1e-12:
            failures.append(f"{name}: epsilon={report.epsilon:.17g} exceeds 2K|U|={limit:.17g}")

        main = report.entry('lower_main')
        if main.applicable:
            checks += 1
            ceiling = main.params['ceiling']
            if main.value > ceiling * (1.0 + 1e-12):
                failures.append(f"{name}: lower_main={main.value:.17g} exceeds ceiling {ceiling:.17g}")
            main_sup = report.entry('lower_main_sup')
            if main_sup.applicable:
                checks += 1
                if main_sup.value < main.value - MAIN_SUP_SLACK:
                    failures.append(
                        f"{name}: lower_main_sup={main_sup.value:.17g} below lower_main={main.value:.17g}"
                    )
        return checks, failures

    def sandwich(self, selector: str = "default") -> SuiteResult:
        """max(bornes inférieures) ≤ ρ mesuré ≤ min(bornes supérieures) sur chaque paire."""
        pairs = corpus_pairs(selector)
        self.logger.info(f"Sandwich suite on {len(pairs)} pairs (corpus '{selector}')")
        with ThreadPoolExecutor(max_workers=resolve_threads()) as executor:
            outcomes = list(executor.map(self._sandwich_pair, pairs))
        failures = [problem for _, problems in outcomes for problem in problems]
        return SuiteResult(
            name="sandwich",
            checks=sum(checks for checks, _ in outcomes),
            failures=failures,
            details={'pairs': len(pairs)},
        )

    # Comparaison

    def _ordered_pairs(self) -> List[Pair]:
        pairs = []
        U = Interval.parse(CORPUS_EXP_INTERVAL)
        exp_generators = {s: generator_from_spec(_exp_spec(s), U) for s in CORPUS_EXP_PARAMETERS}
        for s_f in CORPUS_EXP_PARAMETERS:
            for s_g in CORPUS_EXP_PARAMETERS:
                if s_f > s_g:
                    pairs.append((exp_generators[s_f], exp_generators[s_g], U))
        U = Interval.parse(CORPUS_POWER_INTERVAL)
        power_generators = {s: generator_from_spec(_power_spec(s), U) for s in CORPUS_POWER_PARAMETERS}
        for s_f in CORPUS_POWER_PARAMETERS:
            for s_g in CORPUS_POWER_PARAMETERS:
                if s_f > s_g:
                    pairs.append((power_generators[s_f], power_generators[s_g], U))
        return pairs

    def comparison(self) -> SuiteResult:
        """A f > A g ponctuellement entraîne A[f] ≥ A[g] sur des échantillons aléatoires."""
        rng = self._rng(1)
        pairs = self._ordered_pairs()
        failures = []
        checks = 0
        for f, g, U in pairs:
            checks += 1
            evidence = comparison_check(f, g, U)
            if not evidence.holds:
                failures.append(f"{f.label} >= {g.label}: grid evidence {evidence.dict()}")

        for _ in range(self.trials):
            f, g, U = pairs[int(rng.integers(len(pairs)))]
            sample = _random_sample(rng, U, int(rng.integers(2, 9)))
            checks += 1
            mean_f, mean_g = qa_mean(f, sample), qa_mean(g, sample)
            if mean_f < mean_g - MEAN_TOLERANCE:
                failures.append(
                    f"{f.label} >= {g.label} violated: {mean_f:.17g} < {mean_g:.17g} on {sample.values}"
                )
        return SuiteResult(name="comparison", checks=checks, failures=failures)

    # Invariance affine

    def _affine_corpus(self) -> List[Tuple[Generator, Interval]]:
        U = Interval.parse(CORPUS_EXP_INTERVAL)
        corpus = [(generator_from_spec(_exp_spec(s), U), U) for s in AFFINE_EXP_PARAMETERS]
        U = Interval.parse(CORPUS_POWER_INTERVAL)
        corpus += [(generator_from_spec(_power_spec(s), U), U) for s in CORPUS_POWER_PARAMETERS]
        corpus += [(generator_from_spec(f"expr:{text}", U), U) for text in CORPUS_EXPRESSIONS]
        return corpus

    def affine_invariance(self) -> SuiteResult:
        """α·g + β engendre la même moyenne que g."""
        rng = self._rng(2)
        corpus = self._affine_corpus()
        failures = []
        checks = 0
        for trial in range(self.trials):
            g, U = corpus[int(rng.integers(len(corpus)))]
            alpha = float(rng.choice((-1.0, 1.0)) * rng.uniform(0.5, 2.0))
            beta = float(rng.uniform(-1.0, 1.0))
            h = affine_combination(g, alpha, beta)
            sample = _random_sample(rng, U, int(rng.integers(2, 9)))
            checks += 1
            difference = abs(qa_mean(h, sample) - qa_mean(g, sample))
            if difference >= MEAN_TOLERANCE:
                failures.append(f"{g.label} with alpha={alpha:.6g}, beta={beta:.6g}: difference {difference:.3e}")
            if trial < len(corpus):
                checks += 1
                if not affine_equivalent(g, h, U):
                    failures.append(f"{g.label} and its affine image are not recognized as equivalent")
        return SuiteResult(name="affine_invariance", checks=checks, failures=failures)

    # Partition

    def partitioning(self) -> SuiteResult:
        """La meilleure cellule d'une partition en n porte au moins 1/n de la ∗-norme."""
        rng = self._rng(3)
        failures = []
        checks = 0
        for _ in range(self.partition_trials):
            u = _random_integrand(rng)
            start = float(rng.uniform(-1.0, 1.0))
            U = Interval(start, start + float(rng.uniform(0.5, 3.0)))
            total = star_norm(u, U).value
            for n in range(2, 9):
                V = partition_subinterval(u, U, n)
                local = star_norm(u, V).value
                checks += 1
                if local < total / n - PARTITION_SLACK * max(1.0, total):
                    failures.append(f"n={n} on {U}: cell norm {local:.17g} < {total / n:.17g}")

        f, g = (generator_from_spec(spec, Interval.parse(WORKED_EXAMPLE_INTERVAL)) for spec in WORKED_EXAMPLE_PAIR)
        restriction = rho_restricted_monotone(
            f, g, Interval.parse(WORKED_EXAMPLE_INTERVAL), RESTRICTION_SUBINTERVAL, self.cfg
        )
        checks += 1
        if not restriction.holds:
            failures.append(f"restriction to {RESTRICTION_SUBINTERVAL} increased rho: {restriction.dict()}")
        return SuiteResult(name="partitioning", checks=checks, failures=failures)

    # Conjugaison

    def conjugation(self) -> SuiteResult:
        """P_s(e^a, w) = exp(E^s(a, w)), la puissance passant par son inverse explicite."""
        rng = self._rng(4)
        U = Interval.parse(CORPUS_POWER_INTERVAL)
        log_U = Interval(math.log(U.lo), math.log(U.hi))
        failures = []
        checks = 0
        parameters = list(CORPUS_POWER_PARAMETERS)
        for trial in range(self.trials):
            if trial < len(parameters):
                s = parameters[trial]
            else:
                # |s| ≥ 0.25: la puissance 1/s amplifie les arrondis quand s → 0
                s = round(float(rng.choice((-1.0, 1.0)) * rng.uniform(0.25, 3.0)), 4)
            # sans famille: l'évaluation passe par p_s⁻¹ et non par le log-sum-exp
            power = affine_combination(generator_from_spec(_power_spec(s), U), 1.0, 0.0)
            logs = _random_sample(rng, log_U, int(rng.integers(2, 9)))
            sample = WeightedSample(values=np.exp(logs.values).tolist(), weights=logs.weights)
            checks += 1
            left = qa_mean(power, sample)
            right = math.exp(exp_mean(s, logs))
            if abs(left - right) > MEAN_TOLERANCE * max(1.0, abs(right)):
                failures.append(f"s={s:.6g}: power mean {left:.17g} != exp(E^s) {right:.17g}")
        return SuiteResult(name="conjugation", checks=checks, failures=failures)

    # Convergence

    def convergence(self) -> SuiteResult:
        """ε_n → 0 et ρ_n → 0 pour g_n = exp(5 + 1/n), encadrés par les bornes."""
        U = Interval.parse(CORPUS_EXP_INTERVAL)
        f = generator_from_spec(_exp_spec(CONVERGENCE_BASE), U)
        gs = [generator_from_spec(_exp_spec(CONVERGENCE_BASE + 1.0 / n), U) for n in CONVERGENCE_STEPS]
        profile = convergence_profile(f, gs, U, self.cfg)
        failures = []
        checks = 0
        for previous, current in zip(profile, profile[1:]):
            checks += 2
            if not current.epsilon < previous.epsilon:
                failures.append(f"epsilon does not decrease from {previous.label} to {current.label}")
            if current.rho > previous.rho + SANDWICH_SLACK:
                failures.append(f"rho increases from {previous.label} to {current.label}")
        for point in profile:
            checks += 1
            upper = math.inf if point.upper_star_norm is None else point.upper_star_norm
            if not point.lower_main <= point.rho + SANDWICH_SLACK <= upper + 2 * SANDWICH_SLACK:
                failures.append(f"{point.label}: bounds do not enclose rho {point.dict()}")
        return SuiteResult(
            name="convergence",
            checks=checks,
            failures=failures,
            details={'profile': [point.dict() for point in profile]},
        )

    # Oracle force brute

    @staticmethod
    def brute_force_rho(f: Generator, g: Generator, U: Interval, grid: int = ORACLE_GRID) -> float:
        """
        Max de |A[f]_θ - A[g]_θ| sur une grille, sans raffinement.

        grid points en x et z; en θ, grid points uniformes sur [0, 1] plus
        grid points log-espacés de THETA_FLOOR à 1/2 près de chaque bord.
        """
        lo, hi = common_scan_bounds(f, g, U)
        x = np.linspace(lo, hi, grid)
        tail = np.geomspace(THETA_FLOOR, 0.5, grid)
        theta = np.unique(np.concatenate([np.linspace(0.0, 1.0, grid), tail, 1.0 - tail]))
        best = 0.0
        for start in range(0, grid, 8):
            xs = x[start:start + 8, None, None]
            values = np.abs(
                two_point_mean(f, x[None, :, None], xs, theta[None, None, :])
                - two_point_mean(g, x[None, :, None], xs, theta[None, None, :])
            )
            best = max(best, float(np.nanmax(values)))
        return best

    def oracle(self) -> SuiteResult:
        """estimate_rho contre la grille force brute sur les paires désignées."""
        failures = []
        details = {}
        for spec_f, spec_g, text in ORACLE_PAIRS:
            U = Interval.parse(text)
            f, g = generator_from_spec(spec_f, U), generator_from_spec(spec_g, U)
            estimate = estimate_rho(f, g, U, self.cfg).value
            reference = self.brute_force_rho(f, g, U)
            details[f"{spec_f}/{spec_g}"] = {'estimate': estimate, 'brute_force': reference}
            if abs(estimate - reference) > ORACLE_TOLERANCE:
                failures.append(f"{spec_f}/{spec_g} on {U}: estimate {estimate:.17g}, grid {reference:.17g}")
        return SuiteResult(name="oracle", checks=len(ORACLE_PAIRS), failures=failures, details=details)

    # Tableau de l'exemple numérique

    def table(self) -> List[TableRow]:
        """Valeurs calculées des lignes du tableau de l'exemple exp(15)/exp(20)."""
        U = Interval.parse(WORKED_EXAMPLE_INTERVAL)
        f, g = (generator_from_spec(spec, U) for spec in WORKED_EXAMPLE_PAIR)
        certificate = SeparationCertificate.from_parameters(**WORKED_EXAMPLE_CERTIFICATE)
        compute = {
            'rho': lambda: estimate_rho(f, g, U, self.cfg).value,
            'lower_main': lambda: lower_main(f, g, U),
            'lower_estim': lambda: lower_estim(f, g, U),
            'box_lower': lambda: box_lower(certificate),
            'box_lower_simplified': lambda: box_lower_simplified(certificate),
        }
        rows = []
        for name, description, published, check in WORKED_EXAMPLE_TABLE:
            value = compute[name]()
            rows.append(TableRow(
                name=name,
                description=description,
                published=published,
                computed=value,
                check=tuple(check),
                within=_within(value, published, check),
            ))
        return rows

    def table_suite(self) -> SuiteResult:
        rows = self.table()
        failures = [
            f"{row.name}: computed {row.computed!r} outside {row.check} (published {row.published:g})"
            for row in rows if not row.within
        ]
        return SuiteResult(name="table", checks=len(rows), failures=failures)

    def run(self, selector: str = "default") -> List[SuiteResult]:
        """Toutes les suites; l'oracle force brute s'ajoute pour le corpus 'all'."""
        suites = [
            lambda: self.sandwich(selector),
            self.comparison,
            self.affine_invariance,
            self.partitioning,
            self.conjugation,
            self.convergence,
            self.table_suite,
        ]
        if selector == "all":
            suites.append(self.oracle)
        results = []
        for suite in suites:
            result = suite()
            level = logging.INFO if result.passed else logging.WARNING
            self.logger.log(level, f"Suite {result.name}: {result.checks} checks, {len(result.failures)} failures")
            results.append(result)
        return results


__all__ = [
    'corpus_groups',
    'corpus_pairs',
    'VerificationService',
]
