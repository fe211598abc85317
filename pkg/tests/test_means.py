"""
Tests des moyennes quasi-arithmétiques et des échantillons pondérés.
"""
import math
import unittest

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qam.generators.base import affine_combination
from qam.generators.builtins import generator_from_spec
from qam.generators.interval import Interval
from qam.means import affine_equivalent, comparison_check, exp_mean, power_mean, qa_mean, two_point_mean
from qam.schemas.sample import WeightedSample, make_sample
from qam.utils.errors import DomainError, ValidationError


class TestWeightedSample(unittest.TestCase):
    """Tests de l'échantillon pondéré"""

    def test_uniform_default_weights(self):
        sample = make_sample([1.0, 2.0, 3.0, 4.0])
        self.assertEqual(sample.weights, [0.25] * 4)
        self.assertEqual(len(sample), 4)

    def test_small_drift_is_renormalized(self):
        sample = make_sample([0.0, 1.0], [0.5, 0.5 + 5e-10])
        self.assertAlmostEqual(math.fsum(sample.weights), 1.0, places=15)

    def test_invalid_samples(self):
        cases = [
            ([0.0, 1.0], [0.3, 0.3]),
            ([0.0, 1.0], [1.0, 0.0]),
            ([0.0, 1.0], [0.5]),
            ([], None),
            ([math.nan], None),
        ]
        for values, weights in cases:
            with self.subTest(values=values, weights=weights):
                with self.assertRaises(ValidationError):
                    make_sample(values, weights)


class TestClosedFormMeans(unittest.TestCase):
    """Tests des moyennes exponentielles et puissances"""

    def setUp(self):
        self.half = make_sample([0.0, 1.0], [0.5, 0.5])

    def test_exp_mean_worked_value(self):
        expected = math.log(0.5 * (1.0 + math.exp(15.0))) / 15.0
        self.assertAlmostEqual(exp_mean(15.0, self.half), expected, places=14)
        self.assertAlmostEqual(exp_mean(15.0, self.half), 0.9537902, places=6)

    def test_exp_mean_zero_is_arithmetic(self):
        self.assertEqual(exp_mean(0.0, self.half), 0.5)

    def test_exp_mean_large_parameter_does_not_overflow(self):
        value = exp_mean(2000.0, self.half)
        self.assertAlmostEqual(value, 1.0 - math.log(2.0) / 2000.0, places=12)

    def test_power_mean(self):
        self.assertAlmostEqual(power_mean(2.0, make_sample([1.0, 3.0])), math.sqrt(5.0), places=14)
        self.assertAlmostEqual(power_mean(0.0, make_sample([1.0, 4.0])), 2.0, places=14)
        self.assertAlmostEqual(power_mean(-1.0, make_sample([1.0, 3.0])), 1.5, places=14)

    def test_power_mean_needs_positive_values(self):
        with self.assertRaises(DomainError):
            power_mean(2.0, make_sample([0.0, 1.0]))


class TestQuasiArithmeticMean(unittest.TestCase):
    """Tests de A[g](a, w)"""

    def test_identity(self):
        g = generator_from_spec("id", Interval(0.0, 1.0))
        self.assertEqual(qa_mean(g, make_sample([0.0, 1.0])), 0.5)

    def test_log_family_is_geometric(self):
        g = generator_from_spec("log", Interval(1.0, 4.0))
        self.assertAlmostEqual(qa_mean(g, make_sample([1.0, 4.0])), 2.0, places=12)

    def test_expression_uses_bisection_inverse(self):
        g = generator_from_spec("expr:ln(x)", Interval(1.0, 4.0))
        self.assertAlmostEqual(qa_mean(g, make_sample([1.0, 4.0])), 2.0, places=10)

    def test_constant_sample(self):
        g = generator_from_spec("exp:5", Interval(0.0, 1.0))
        self.assertEqual(qa_mean(g, make_sample([0.3, 0.3])), 0.3)

    def test_value_outside_domain(self):
        g = generator_from_spec("exp:5", Interval(0.0, 1.0))
        with self.assertRaises(DomainError):
            qa_mean(g, make_sample([0.5, 1.5]))

    def test_affine_image_gives_same_mean(self):
        g = generator_from_spec("pow:2", Interval(1.0, 2.0))
        h = affine_combination(g, -3.0, 7.0)
        sample = make_sample([1.1, 1.7, 1.9], [0.2, 0.3, 0.5])
        self.assertAlmostEqual(qa_mean(h, sample), qa_mean(g, sample), places=12)


class TestTwoPointMean(unittest.TestCase):
    """Tests de A[g]_θ(z, x)"""

    def setUp(self):
        self.g = generator_from_spec("exp:15", Interval.open(0.0, 1.0))

    def test_endpoints_of_theta(self):
        self.assertEqual(two_point_mean(self.g, 0.2, 0.8, 0.0), 0.8)
        self.assertEqual(two_point_mean(self.g, 0.2, 0.8, 1.0), 0.2)

    def test_exponential_closed_form(self):
        expected = math.log(0.3 * math.exp(3.0) + 0.7 * math.exp(12.0)) / 15.0
        self.assertAlmostEqual(two_point_mean(self.g, 0.2, 0.8, 0.3), expected, places=13)

    def test_generic_path_agrees(self):
        h = affine_combination(self.g, 2.0, 1.0)
        self.assertAlmostEqual(
            two_point_mean(h, 0.2, 0.8, 0.3), two_point_mean(self.g, 0.2, 0.8, 0.3), places=12
        )

    def test_broadcasting(self):
        z = np.array([0.1, 0.5])[:, None]
        values = two_point_mean(self.g, z, 0.9, np.array([0.25, 0.75])[None, :])
        self.assertEqual(values.shape, (2, 2))

    def test_theta_out_of_range(self):
        with self.assertRaises(ValidationError):
            two_point_mean(self.g, 0.2, 0.8, 1.5)


class TestComparison(unittest.TestCase):
    """Tests de la comparaison et de l'équivalence affine"""

    def setUp(self):
        self.U = Interval.open(0.0, 1.0)
        self.f = generator_from_spec("exp:20", self.U)
        self.g = generator_from_spec("exp:15", self.U)

    def test_ordered_pair(self):
        evidence = comparison_check(self.f, self.g, self.U)
        self.assertTrue(evidence.holds)
        self.assertAlmostEqual(evidence.min_ap_gap, 5.0, places=9)

    def test_reversed_pair(self):
        evidence = comparison_check(self.g, self.f, self.U)
        self.assertFalse(evidence.ap_ordered)
        self.assertFalse(evidence.holds)

    def test_affine_equivalence(self):
        self.assertTrue(affine_equivalent(self.g, affine_combination(self.g, 2.0, 1.0), self.U))
        self.assertFalse(affine_equivalent(self.f, self.g, self.U))


samples = st.integers(min_value=2, max_value=6).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=n, max_size=n),
        st.lists(st.floats(min_value=0.05, max_value=1.0), min_size=n, max_size=n),
    )
)


def _sample(data):
    values, raw = data
    total = math.fsum(raw)
    return WeightedSample(values=values, weights=[w / total for w in raw])


@settings(max_examples=100, deadline=None)
@given(data=samples, s=st.floats(min_value=-30.0, max_value=30.0))
def test_exp_mean_is_internal(data, s):
    sample = _sample(data)
    value = exp_mean(s, sample)
    assert min(sample.values) <= value <= max(sample.values)


@settings(max_examples=100, deadline=None)
@given(data=samples, s=st.floats(min_value=-20.0, max_value=20.0), step=st.floats(min_value=0.1, max_value=10.0))
def test_exp_mean_increases_with_parameter(data, s, step):
    sample = _sample(data)
    assert exp_mean(s, sample) <= exp_mean(s + step, sample) + 1e-12


@settings(max_examples=50, deadline=None)
@given(
    data=samples,
    alpha=st.floats(min_value=0.5, max_value=2.0),
    beta=st.floats(min_value=-1.0, max_value=1.0),
)
def test_affine_invariance_of_power_generator(data, alpha, beta):
    values, raw = data
    sample = _sample(([1.0 + v for v in values], raw))
    g = generator_from_spec("pow:2", Interval(1.0, 2.0))
    h = affine_combination(g, alpha, beta)
    assert qa_mean(h, sample) == pytest.approx(qa_mean(g, sample), abs=1e-12)
