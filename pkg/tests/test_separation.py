"""
Tests de la séparation (φ, K, δ) et des bornes par boîte.
"""
import math
import unittest

import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError as PydanticValidationError

from qam.bounds.separation import (
    box_alpha,
    box_lower,
    box_lower_simplified,
    box_lower_simplified_value,
    box_lower_value,
    find_separation,
    separation_entries,
    theta,
)
from qam.generators.builtins import generator_from_spec
from qam.generators.interval import Interval
from qam.schemas.results import SeparationCertificate
from qam.utils.errors import ValidationError


class TestBoxBounds(unittest.TestCase):
    """Tests des bornes (1/K)·ln(1 + Kα) et de leur forme simplifiée"""

    def setUp(self):
        self.cert = SeparationCertificate.from_parameters(phi=1.0, K=20.0, delta=5.0)

    def test_alpha(self):
        self.assertAlmostEqual(box_alpha(1.0, 20.0, 5.0), 0.016632, delta=1e-6)

    def test_alpha_limit_when_delta_equals_k(self):
        expected = math.expm1(-10.0) / 20.0 + 0.5
        self.assertEqual(box_alpha(1.0, 20.0, 20.0), expected)

    def test_box_lower_worked_example(self):
        value = box_lower(self.cert)
        self.assertAlmostEqual(value, 0.014359, delta=2e-6)
        self.assertTrue(0.0138 <= value <= 0.0148)

    def test_box_lower_simplified_worked_example(self):
        value = box_lower_simplified(self.cert)
        self.assertAlmostEqual(value, 0.011152, delta=2e-6)
        self.assertTrue(0.0105 <= value <= 0.0117)
        self.assertLessEqual(value, box_lower(self.cert))

    def test_theta(self):
        self.assertEqual(theta(0.0), 0.0)
        self.assertAlmostEqual(theta(10.0), 0.9995006, places=7)
        self.assertAlmostEqual(theta(800.0), 1.0)

    def test_delta_above_twice_k(self):
        with self.assertRaises(ValidationError):
            box_lower_value(1.0, 1.0, 3.0)
        with self.assertRaises(PydanticValidationError):
            SeparationCertificate.from_parameters(phi=1.0, K=1.0, delta=3.0)

    def test_non_positive_parameters(self):
        with self.assertRaises(ValidationError):
            box_lower_simplified_value(0.0, 1.0, 1.0)
        with self.assertRaises(ValidationError):
            box_lower_value(1.0, -1.0, 1.0)

    def test_certificate_phi_matches_length(self):
        with self.assertRaises(PydanticValidationError):
            SeparationCertificate(V=Interval(0.0, 1.0), phi=0.5, K=1.0, delta=1.0)


class TestFindSeparation(unittest.TestCase):
    """Tests de la recherche de l'intervalle séparant"""

    def setUp(self):
        self.U = Interval.open(0.0, 1.0)
        self.f = generator_from_spec("exp:15", self.U)
        self.g = generator_from_spec("exp:20", self.U)

    def test_exponential_pair(self):
        cert = find_separation(self.f, self.g, self.U)
        self.assertIsNotNone(cert)
        self.assertAlmostEqual(cert.V.lo, 0.0)
        self.assertAlmostEqual(cert.V.hi, 1.0)
        self.assertAlmostEqual(cert.phi, 1.0)
        self.assertAlmostEqual(cert.K, 20.0, places=6)
        self.assertAlmostEqual(cert.delta, 5.0, places=6)
        for margin in cert.residuals.values():
            self.assertGreaterEqual(margin, -1e-9)

    def test_identical_generators(self):
        self.assertIsNone(find_separation(self.f, self.f, self.U))

    def test_entries_without_separation(self):
        box, simplified = separation_entries(self.f, self.f, self.U)
        self.assertEqual(box.value, 0.0)
        self.assertEqual(simplified.value, 0.0)
        self.assertFalse(box.params['separated'])

    def test_entries_with_separation(self):
        box, simplified = separation_entries(self.f, self.g, self.U)
        self.assertTrue(box.params['separated'])
        self.assertFalse(box.params['degenerate'])
        self.assertGreaterEqual(box.value, simplified.value)

    def test_varying_indices(self):
        """A g - A f = 1/x - A f décroît de 0.77 à 0.21 sur [1, 2] sans s'annuler"""
        U = Interval(1.0, 2.0)
        f = generator_from_spec("expr:exp(0.5*x) + x", U)
        g = generator_from_spec("pow:2", U)
        cert = find_separation(f, g, U, phi_grid=32)
        self.assertIsNotNone(cert)
        self.assertTrue(cert.V.is_subset_of(U))
        self.assertGreaterEqual(cert.delta, 0.21)
        self.assertLessEqual(cert.delta, 2.0 * cert.K)
        self.assertGreaterEqual(cert.K, 0.5)
        for name, margin in cert.residuals.items():
            self.assertGreaterEqual(margin, -1e-9, name)


@settings(max_examples=200, deadline=None)
@given(
    phi=st.floats(min_value=0.01, max_value=5.0),
    K=st.floats(min_value=0.1, max_value=50.0),
    ratio=st.floats(min_value=0.05, max_value=2.0),
)
def test_simplified_never_exceeds_box_lower(phi, K, ratio):
    delta = ratio * K
    simplified = box_lower_simplified_value(phi, K, delta)
    full = box_lower_value(phi, K, delta)
    assert simplified <= full * (1.0 + 1e-9) + 1e-15


@pytest.mark.parametrize("value", [box_lower_value, box_lower_simplified_value])
@pytest.mark.parametrize("K", [0.5, 5.0, 20.0])
def test_box_bounds_monotone_in_delta_and_phi(value, K):
    phis = (0.05, 0.25, 1.0, 2.0)
    deltas = tuple(r * K for r in (0.1, 0.5, 1.0, 1.5, 2.0))
    table = [[value(phi, K, delta) for delta in deltas] for phi in phis]
    for row in table:
        assert all(a <= b for a, b in zip(row, row[1:]))
    for column in zip(*table):
        assert all(a <= b for a, b in zip(column, column[1:]))
