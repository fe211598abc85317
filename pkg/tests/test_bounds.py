"""
Tests des bornes analytiques: constantes de l'estimation explicite, bornes
classiques, bornes par les indices d'Arrow-Pratt.
"""
import math
import unittest

import pytest
from hypothesis import given, settings, strategies as st

from qam.bounds import (
    PairMeasures,
    cargo_shisha_lower,
    cargo_shisha_upper,
    compute_estim_constants,
    convergence_profile,
    in_family_k,
    log_expm1,
    lower_estim,
    lower_estim_from,
    lower_main,
    lower_main_from,
    lower_main_partitioned,
    lower_main_sup,
    main_bound_ceiling,
    measure_K,
    pales_sufficient_check,
    upper_star_norm,
    upper_universal,
)
from qam.bounds.arrow_pratt import lower_estim_entry
from qam.bounds.constants import estim_objective, stationarity
from qam.generators.base import affine_combination
from qam.generators.builtins import generator_from_spec
from qam.generators.interval import Interval
from qam.utils.errors import ValidationError


class TestEstimConstants(unittest.TestCase):
    """Tests des constantes C0, y0, y1"""

    def setUp(self):
        self.constants = compute_estim_constants()

    def test_values(self):
        self.assertAlmostEqual(self.constants.C0, 1.2491, delta=1e-3)
        self.assertAlmostEqual(self.constants.y0, 7.3145e-5, delta=7.3145e-8)
        self.assertAlmostEqual(self.constants.y1, 1.608e-3, delta=1.608e-6)

    def test_stationarity(self):
        self.assertLess(self.constants.residual, 1e-10)
        self.assertAlmostEqual(stationarity(self.constants.C0), 0.0, places=10)

    def test_is_a_maximum(self):
        C0 = self.constants.C0
        self.assertAlmostEqual(estim_objective(C0), self.constants.y0, delta=1e-15)
        self.assertGreater(estim_objective(C0), estim_objective(C0 - 0.05))
        self.assertGreater(estim_objective(C0), estim_objective(C0 + 0.05))

    def test_cached(self):
        self.assertIs(compute_estim_constants(), self.constants)

    def test_log_expm1(self):
        self.assertAlmostEqual(log_expm1(50.0), 50.0, places=12)
        self.assertAlmostEqual(log_expm1(1e-3), math.log(math.expm1(1e-3)), places=12)
        self.assertAlmostEqual(log_expm1(800.0), 800.0)


class TestWorkedExampleBounds(unittest.TestCase):
    """Bornes de l'exemple exp(15) / exp(20) sur (0, 1)"""

    def setUp(self):
        self.U = Interval.open(0.0, 1.0)
        self.f = generator_from_spec("exp:15", self.U)
        self.g = generator_from_spec("exp:20", self.U)

    def test_measures(self):
        measures = PairMeasures.measure(self.f, self.g, self.U)
        self.assertAlmostEqual(measures.K, 20.0, places=9)
        self.assertAlmostEqual(measures.epsilon, 5.0, places=9)
        self.assertAlmostEqual(measures.norm_f, 15.0, places=9)
        self.assertAlmostEqual(measures.norm_g, 20.0, places=9)
        self.assertEqual(measures.norm, measures.norm_f)
        self.assertEqual(measures.length, 1.0)

    def test_lower_main(self):
        self.assertAlmostEqual(lower_main(self.f, self.g, self.U), 3.19184e-17, delta=3.19184e-20)

    def test_lower_main_below_ceiling(self):
        ceiling = main_bound_ceiling(20.0, 1.0)
        self.assertAlmostEqual(ceiling, 0.125 * math.exp(-10.0), places=15)
        self.assertLessEqual(lower_main(self.f, self.g, self.U), ceiling)

    def test_lower_main_sup_dominates(self):
        main = lower_main(self.f, self.g, self.U)
        self.assertGreaterEqual(lower_main_sup(self.f, self.g, self.U), main * (1.0 - 1e-12))

    def test_lower_main_partitioned_dominates(self):
        main = lower_main(self.f, self.g, self.U)
        self.assertGreaterEqual(lower_main_partitioned(self.f, self.g, self.U), main)

    def test_lower_estim(self):
        value = lower_estim(self.f, self.g, self.U)
        self.assertAlmostEqual(value, 5.71442e-8, delta=5.71442e-10)
        entry = lower_estim_entry(PairMeasures.measure(self.f, self.g, self.U))
        self.assertEqual(entry.params['case'], "long")

    def test_upper_star_norm(self):
        expected = math.exp(15.0) * math.expm1(5.0)
        self.assertAlmostEqual(upper_star_norm(self.f, self.g, self.U) / expected, 1.0, places=8)

    def test_cargo_shisha_lower(self):
        value = cargo_shisha_lower(self.f, self.g, self.U)
        self.assertGreater(value, 0.0)
        self.assertLessEqual(value, 0.217)

    def test_cargo_shisha_upper_is_above_lower(self):
        self.assertGreaterEqual(
            cargo_shisha_upper(self.f, self.g, self.U), cargo_shisha_lower(self.f, self.g, self.U)
        )

    def test_family_membership(self):
        self.assertTrue(in_family_k(self.f, 15.0))
        self.assertFalse(in_family_k(self.f, 14.9))
        self.assertAlmostEqual(measure_K(self.f, self.g, self.U), 20.0, places=9)


class TestIdenticalGenerators(unittest.TestCase):
    """Toutes les bornes s'annulent quand les moyennes coïncident"""

    def setUp(self):
        self.U = Interval(1.0, 2.0)
        self.f = generator_from_spec("pow:2", self.U)

    def test_zero_bounds(self):
        self.assertEqual(lower_main(self.f, self.f, self.U), 0.0)
        self.assertEqual(lower_estim(self.f, self.f, self.U), 0.0)
        self.assertEqual(lower_main_sup(self.f, self.f, self.U), 0.0)
        self.assertEqual(upper_star_norm(self.f, self.f, self.U), 0.0)
        self.assertLessEqual(cargo_shisha_lower(self.f, self.f, self.U), 1e-12)

    def test_affine_image(self):
        h = affine_combination(self.f, 2.0, 1.0)
        self.assertLessEqual(cargo_shisha_lower(self.f, h, self.U), 1e-9)
        self.assertAlmostEqual(lower_main(self.f, h, self.U), 0.0, places=15)


class TestExplicitForms(unittest.TestCase):
    """Tests des formes à paramètres donnés"""

    def test_upper_universal(self):
        first, second = upper_universal(20.0, 1.0)
        self.assertAlmostEqual(first, math.log(0.5 * (math.exp(20.0) + 1.0)) / 20.0, places=14)
        self.assertAlmostEqual(first, 0.9653426, places=7)
        self.assertAlmostEqual(second, (3.0 + 7.0 * math.e) / 6.0 * 20.0, places=10)

    def test_upper_universal_large_argument(self):
        first, _ = upper_universal(1000.0, 2.0)
        self.assertAlmostEqual(first, 2.0 - math.log(2.0) / 1000.0, places=12)

    def test_upper_universal_invalid(self):
        with self.assertRaises(ValidationError):
            upper_universal(0.0, 1.0)
        with self.assertRaises(ValidationError):
            upper_universal(1.0, -1.0)

    def test_lower_estim_from(self):
        self.assertAlmostEqual(lower_estim_from(5.0, 20.0, 1.0), 5.71442e-8, delta=5.71442e-10)
        y1 = compute_estim_constants().y1
        self.assertAlmostEqual(lower_estim_from(1.0, 0.1, 1.0), y1 / 0.1, places=15)
        self.assertEqual(lower_estim_from(0.0, 1.0, 1.0), 0.0)

    def test_lower_main_from(self):
        self.assertAlmostEqual(lower_main_from(5.0, 20.0, 15.0, 1.0), 3.19184e-17, delta=3.19184e-20)

    def test_lower_main_small_epsilon_series(self):
        """ε → 0: ε³ / (384·K·e^{‖A f‖∗}·(e^{K|U|} - 1))"""
        K, norm, length = 2.0, 0.5, 1.0
        for epsilon in (1e-4, 1e-5):
            with self.subTest(epsilon=epsilon):
                series = epsilon ** 3 / (384.0 * K * math.exp(norm) * math.expm1(K * length))
                self.assertAlmostEqual(lower_main_from(epsilon, K, norm, length) / series, 1.0, delta=1e-4)

    def test_lower_estim_at_case_boundary(self):
        """K|U| = C0/2 exactement: la plus grande des deux formes"""
        constants = compute_estim_constants()
        K, epsilon = constants.C0 / 2.0, 0.5
        short = constants.y1 * epsilon ** 3 / K
        long = constants.y0 * epsilon ** 3 / K ** 4
        self.assertEqual(lower_estim_from(epsilon, K, 1.0), max(short, long))
        measures = PairMeasures(K=K, epsilon=epsilon, norm_f=0.1, norm_g=0.2, length=1.0)
        entry = lower_estim_entry(measures)
        self.assertEqual(entry.params["case"], "boundary")
        self.assertEqual(entry.value, max(short, long))

    def test_invalid_parameters(self):
        with self.assertRaises(ValidationError):
            lower_estim_from(-1.0, 20.0, 1.0)
        with self.assertRaises(ValidationError):
            lower_estim_from(1.0, 0.0, 1.0)
        with self.assertRaises(ValidationError):
            lower_main_from(1.0, 20.0, math.nan, 1.0)
        with self.assertRaises(ValidationError):
            main_bound_ceiling(20.0, 0.0)


class TestPalesCheck(unittest.TestCase):
    """Tests du contrôle consultatif de Páles"""

    def setUp(self):
        self.U = Interval(1.0, 2.0)
        self.f = generator_from_spec("pow:1", self.U)
        self.g = generator_from_spec("pow:3", self.U)

    def test_same_generator_holds(self):
        evidence = pales_sufficient_check(self.f, self.f, self.U, alpha=0.5)
        self.assertTrue(evidence.holds)
        self.assertFalse(evidence.vacuous)
        self.assertGreater(evidence.triples, 0)
        self.assertAlmostEqual(evidence.max_difference, 0.0, places=12)

    def test_alpha_longer_than_interval_is_vacuous(self):
        evidence = pales_sufficient_check(self.f, self.g, self.U, alpha=2.0)
        self.assertTrue(evidence.vacuous)
        self.assertTrue(evidence.holds)

    def test_small_grid(self):
        evidence = pales_sufficient_check(self.f, self.g, self.U, alpha=0.5, C=0.5, grid=12)
        self.assertEqual(evidence.C, 0.5)
        self.assertGreaterEqual(evidence.max_difference, 0.0)

    def test_invalid_parameters(self):
        with self.assertRaises(ValidationError):
            pales_sufficient_check(self.f, self.g, self.U, alpha=0.5, C=1.0)
        with self.assertRaises(ValidationError):
            pales_sufficient_check(self.f, self.g, self.U, alpha=0.0)


def test_power_pair_classical_bounds(power_pair):
    f, g, U = power_pair
    lower = cargo_shisha_lower(f, g, U)
    upper = cargo_shisha_upper(f, g, U)
    assert 0.0 < lower <= upper < math.inf


def test_convergence_profile(unit_open, quick_cfg):
    f = generator_from_spec("exp:5", unit_open)
    gs = [generator_from_spec(f"exp:{5 + 1 / n:g}", unit_open) for n in (1, 2, 4)]
    profile = convergence_profile(f, gs, unit_open, quick_cfg)
    epsilons = [point.epsilon for point in profile]
    assert epsilons == pytest.approx([1.0, 0.5, 0.25], abs=1e-9)
    for point in profile:
        assert point.lower_main <= point.rho + 1e-9
        assert point.upper_star_norm is not None
        assert point.rho <= point.upper_star_norm + 1e-9


@settings(max_examples=100, deadline=None)
@given(K=st.floats(min_value=1e-3, max_value=100.0), length=st.floats(min_value=1e-3, max_value=10.0))
def test_upper_universal_between_half_and_full_length(K, length):
    first, second = upper_universal(K, length)
    assert length / 2 * (1 - 1e-9) - 1e-12 <= first <= length * (1 + 1e-9)
    assert second > 0


@settings(max_examples=100, deadline=None)
@given(
    epsilon=st.floats(min_value=1e-3, max_value=20.0),
    K=st.floats(min_value=0.1, max_value=30.0),
    length=st.floats(min_value=0.05, max_value=2.0),
)
def test_lower_main_never_exceeds_ceiling(epsilon, K, length):
    epsilon = min(epsilon, 2 * K * length)
    # ε ≤ ‖A f‖∗ + ‖A g‖∗: l'une des deux normes vaut au moins ε/2
    norm = epsilon / 2
    assert lower_main_from(epsilon, K, norm, length) <= main_bound_ceiling(K, length) * (1 + 1e-12)
