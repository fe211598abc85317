"""
Tests des générateurs: intervalles, familles prédéfinies, expressions et
indices d'Arrow-Pratt.
"""
import math
import unittest

import numpy as np
import pytest
from pydantic import ValidationError as PydanticValidationError

from qam.generators.base import (
    Generator,
    affine_combination,
    affine_normalize,
    arrow_pratt,
    check_monotone,
    reparametrize,
    restrict,
)
from qam.generators.builtins import BuiltinFamily, generator_from_spec, make_builtin, parse_family_spec
from qam.generators.dual import Dual2
from qam.generators.expression import parse_expression, parse_generator, tokenize
from qam.generators.interval import UNIT_INTERVAL, Interval
from qam.utils.errors import (
    ExpressionParseError,
    InvalidDomainError,
    NotAGeneratorError,
    QAMInputError,
    ValidationError,
)
from qam.verification import corpus_groups


class TestInterval(unittest.TestCase):
    """Tests de l'intervalle borné"""

    def test_parse_bare_pair_is_closed(self):
        """'lo,hi' désigne un intervalle fermé"""
        U = Interval.parse("0,1")
        self.assertTrue(U.is_closed())
        self.assertEqual((U.lo, U.hi), (0.0, 1.0))

    def test_parse_brackets(self):
        """Chaque crochet fixe l'ouverture de son bord"""
        U = Interval.parse("[1,2)")
        self.assertTrue(U.lo_closed)
        self.assertFalse(U.hi_closed)
        self.assertEqual(Interval.parse("(0,1)"), Interval.open(0.0, 1.0))

    def test_parse_rejects_malformed(self):
        for text in ("1;2", "a,b", "", "1,2,3"):
            with self.subTest(text=text):
                with self.assertRaises(ValueError):
                    Interval.parse(text)

    def test_requires_lo_below_hi(self):
        with self.assertRaises(PydanticValidationError):
            Interval(1.0, 1.0)
        with self.assertRaises(PydanticValidationError):
            Interval(0.0, math.inf)

    def test_contains_respects_openness(self):
        U = Interval.open(0.0, 1.0)
        self.assertFalse(U.contains(0.0))
        self.assertTrue(U.contains(0.5))
        self.assertTrue(U.contains_closure(1.0))

    def test_subset(self):
        self.assertTrue(Interval(0.25, 0.75).is_subset_of(Interval.open(0.0, 1.0)))
        self.assertFalse(Interval(0.0, 0.5).is_subset_of(Interval.open(0.0, 1.0)))
        self.assertTrue(Interval(0.0, 0.5).is_subset_of(Interval(0.0, 1.0)))

    def test_split(self):
        cells = Interval(0.0, 1.0).split(4)
        self.assertEqual(len(cells), 4)
        self.assertAlmostEqual(cells[1].lo, 0.25)
        self.assertAlmostEqual(cells[-1].hi, 1.0)

    def test_str_round_trips_openness(self):
        U = Interval(0.0, 1.0, hi_closed=False)
        self.assertEqual(str(U), "[0,1)")
        self.assertEqual(Interval.parse(str(U)), U)


class TestBuiltinFamilies(unittest.TestCase):
    """Tests des familles exp, power, id et log"""

    def setUp(self):
        self.unit = Interval.open(0.0, 1.0)

    def test_exp_values_and_label(self):
        g = generator_from_spec("exp:15", self.unit)
        self.assertEqual(g.label, "exp:15")
        self.assertAlmostEqual(float(g.eval(0.5)), math.exp(7.5), delta=1e-9 * math.exp(7.5))
        self.assertAlmostEqual(float(g.d1(0.5)), 15 * math.exp(7.5), delta=1e-9 * 15 * math.exp(7.5))
        self.assertEqual(g.sign, 1)
        self.assertEqual(g.family, ("exp", 15.0))

    def test_exp_zero_is_identity(self):
        g = generator_from_spec("exp:0", self.unit)
        self.assertAlmostEqual(float(g.eval(0.3)), 0.3)
        self.assertAlmostEqual(float(g.d2(0.3)), 0.0)

    def test_negative_exp_is_decreasing(self):
        g = generator_from_spec("exp:-5", self.unit)
        self.assertEqual(g.sign, -1)
        self.assertEqual(check_monotone(g), -1)

    def test_power_inverse(self):
        g = generator_from_spec("pow:2", Interval.open(0.0, 4.0))
        self.assertAlmostEqual(float(g.inverse(9.0)), 3.0)

    def test_power_zero_is_logarithm(self):
        g = generator_from_spec("pow:0", Interval(1.0, 2.0))
        self.assertAlmostEqual(float(g.eval(math.e)), 1.0)
        self.assertEqual(g.family, ("power", 0.0))

    def test_power_requires_positive_domain(self):
        with self.assertRaises(InvalidDomainError):
            generator_from_spec("pow:2", Interval(0.0, 4.0))
        with self.assertRaises(InvalidDomainError):
            generator_from_spec("log", Interval(-1.0, 1.0))

    def test_parse_family_spec(self):
        self.assertEqual(parse_family_spec("pow:2"), BuiltinFamily(kind="power", s=2.0))
        self.assertEqual(parse_family_spec("ID").kind, "identity")
        self.assertEqual(parse_family_spec("expr:x^2").text, "x^2")

    def test_parse_family_spec_errors(self):
        for spec in ("foo:1", "exp:abc", "id:3", "exp:inf", "expr:"):
            with self.subTest(spec=spec):
                with self.assertRaises(ValidationError):
                    parse_family_spec(spec)

    def test_make_builtin_identity(self):
        g = make_builtin(BuiltinFamily(kind="identity"), self.unit)
        self.assertEqual(g.label, "id")
        self.assertAlmostEqual(float(g.inverse(0.7)), 0.7)

    def test_invalid_sign(self):
        g = generator_from_spec("id", self.unit)
        with self.assertRaises(NotAGeneratorError):
            Generator(domain=self.unit, sign=0, eval=g.eval, d1=g.d1, d2=g.d2, inverse=g.inverse, label="bad")


class TestExpressions(unittest.TestCase):
    """Tests de l'analyseur d'expressions et de la différentiation duale"""

    def test_matches_builtin_exponential(self):
        """exp(15*x) et exp:15 ont mêmes valeurs et dérivées"""
        U = Interval.open(0.0, 1.0)
        parsed = parse_generator("exp(15*x)", U)
        builtin = generator_from_spec("exp:15", U)
        x = np.linspace(0.05, 0.95, 19)
        for name in ("eval", "d1", "d2"):
            with self.subTest(derivative=name):
                np.testing.assert_allclose(getattr(parsed, name)(x), getattr(builtin, name)(x), rtol=1e-10)

    def test_arrow_pratt_of_logarithm(self):
        g = parse_generator("ln(x)", Interval(1.0, 2.0))
        self.assertAlmostEqual(arrow_pratt(g, 1.5), -1.0 / 1.5, places=12)

    def test_inverse_by_bisection(self):
        g = parse_generator("x + x^3/3", Interval(1.0, 2.0))
        y = float(g.eval(1.3))
        self.assertAlmostEqual(float(g.inverse(y)), 1.3, places=10)

    def test_decreasing_expression(self):
        g = parse_generator("1/x", Interval(1.0, 2.0))
        self.assertEqual(g.sign, -1)
        self.assertAlmostEqual(float(g.inverse(0.5)), 2.0, places=10)

    def test_steep_exponential_matches_builtin(self):
        """exp(30*x): g′ varie de 30 à 30·e^30 sur (0, 1) sans s'annuler"""
        U = Interval.open(0.0, 1.0)
        parsed = parse_generator("exp(30*x)", U)
        builtin = generator_from_spec("exp:30", U)
        self.assertEqual(parsed.sign, builtin.sign)
        self.assertEqual(check_monotone(builtin), 1)
        x = np.linspace(0.05, 0.95, 19)
        np.testing.assert_allclose(arrow_pratt(parsed, x), arrow_pratt(builtin, x), rtol=1e-10)

    def test_vanishing_derivative_is_rejected(self):
        """x³ sur (-1, 1): f′(0) = 0 entre deux points de grille"""
        with self.assertRaises(NotAGeneratorError):
            parse_generator("x^3", Interval(-1.0, 1.0))

    def test_non_monotone_is_rejected(self):
        with self.assertRaises(NotAGeneratorError):
            parse_generator("x^2", Interval(-1.0, 1.0))

    def test_constant_is_rejected(self):
        with self.assertRaises(NotAGeneratorError):
            parse_generator("3+4", Interval(0.0, 1.0))

    def test_syntax_errors_carry_position(self):
        for text in ("exp(", "2*", "x $ 2", "foo(x)", ""):
            with self.subTest(text=text):
                with self.assertRaises(ExpressionParseError) as ctx:
                    parse_expression(text)
                self.assertIsInstance(ctx.exception.position, int)
                self.assertIsInstance(ctx.exception, QAMInputError)

    def test_exponent_must_be_constant(self):
        with self.assertRaises(ExpressionParseError):
            parse_expression("x^x")

    def test_tokenize_positions(self):
        tokens = tokenize("x + 2")
        self.assertEqual([t.position for t in tokens], [0, 2, 4, 5])

    def test_through_spec(self):
        g = generator_from_spec("expr:exp(0.5*x) + x", Interval(1.0, 2.0))
        self.assertEqual(g.label, "expr:exp(0.5*x) + x")
        self.assertEqual(g.sign, 1)


class TestDual2(unittest.TestCase):
    """Tests des nombres duaux d'ordre 2"""

    def test_exp_of_square(self):
        d = Dual2.variable(2.0)
        r = (d * d).exp()
        e4 = math.exp(4.0)
        self.assertAlmostEqual(float(r.p), e4)
        self.assertAlmostEqual(float(r.t), 4.0 * e4, places=9)
        self.assertAlmostEqual(float(r.c), 18.0 * e4, places=8)

    def test_power_and_log(self):
        d = Dual2.variable(2.0)
        cube = d ** 3
        self.assertAlmostEqual(float(cube.t), 12.0)
        self.assertAlmostEqual(float(cube.c), 12.0)
        log = d.log()
        self.assertAlmostEqual(float(log.t), 0.5)
        self.assertAlmostEqual(float(log.c), -0.25)

    def test_quotient(self):
        d = Dual2.variable(2.0)
        r = 1.0 / d
        self.assertAlmostEqual(float(r.t), -0.25)
        self.assertAlmostEqual(float(r.c), 0.25)


class TestTransformations(unittest.TestCase):
    """Tests des transformations affines et de la restriction"""

    def setUp(self):
        self.unit = Interval.open(0.0, 1.0)
        self.g = generator_from_spec("exp:15", self.unit)

    def test_affine_normalize_maps_onto_unit(self):
        h = affine_normalize(self.g, UNIT_INTERVAL)
        self.assertAlmostEqual(float(h.eval(0.0)), 0.0, places=12)
        self.assertAlmostEqual(float(h.eval(1.0)), 1.0, places=12)

    def test_affine_keeps_arrow_pratt(self):
        h = affine_combination(self.g, -2.0, 3.0)
        self.assertEqual(h.sign, -1)
        self.assertAlmostEqual(arrow_pratt(h, 0.4), 15.0, places=10)
        self.assertIsNone(h.family)

    def test_zero_alpha(self):
        with self.assertRaises(NotAGeneratorError):
            affine_combination(self.g, 0.0, 1.0)

    def test_reparametrize(self):
        g = generator_from_spec("pow:2", Interval(1.0, 3.0))
        r = reparametrize(g, UNIT_INTERVAL)
        self.assertAlmostEqual(float(r.eval(0.5)), 4.0)
        self.assertAlmostEqual(float(r.inverse(4.0)), 0.5)

    def test_restrict_outside_domain(self):
        with self.assertRaises(NotAGeneratorError):
            restrict(self.g, Interval(0.5, 1.5))
        self.assertEqual(restrict(self.g, Interval(0.25, 0.75)).family, ("exp", 15.0))


@pytest.mark.parametrize("spec,expected", [
    ("exp:15", 15.0),
    ("exp:-20", -20.0),
    ("id", 0.0),
])
def test_exponential_arrow_pratt_is_constant(unit_open, spec, expected):
    g = generator_from_spec(spec, unit_open)
    index = arrow_pratt(g, np.linspace(0.1, 0.9, 9))
    np.testing.assert_allclose(index, expected, atol=1e-12)


def test_power_arrow_pratt(one_two):
    g = generator_from_spec("pow:3", one_two)
    assert arrow_pratt(g, 1.5) == pytest.approx(2.0 / 1.5, rel=1e-12)


@pytest.mark.parametrize("s", [-20.0, -1.0, 0.5, 15.0, 20.0])
def test_parsed_exponential_arrow_pratt(unit_open, s):
    g = parse_generator(f"exp({s:g}*x)", unit_open)
    index = arrow_pratt(g, np.linspace(0.01, 0.99, 99))
    np.testing.assert_allclose(index, s, atol=1e-9, rtol=0)


def test_inverse_undoes_eval_on_corpus():
    rng = np.random.default_rng(3)
    for U, generators in corpus_groups("all"):
        x = rng.uniform(U.lo, U.hi, 1000)
        for g in generators:
            roundtrip = np.asarray(g.inverse(g.eval(x)), dtype=float)
            np.testing.assert_allclose(roundtrip, x, rtol=1e-10, atol=1e-12, err_msg=g.label)


@pytest.mark.parametrize("text", ["x + x^3/3", "exp(0.5*x) + x", "ln(1+x) + x^2", "1/x"])
def test_dual_derivatives_match_central_differences(one_two, text):
    g = parse_generator(text, one_two)
    h = 1e-5 * one_two.length()
    x = np.linspace(1.1, 1.9, 9)
    first = (g.eval(x + h) - g.eval(x - h)) / (2.0 * h)
    second = (g.d1(x + h) - g.d1(x - h)) / (2.0 * h)
    np.testing.assert_allclose(g.d1(x), first, rtol=1e-5)
    np.testing.assert_allclose(g.d2(x), second, rtol=1e-5)
