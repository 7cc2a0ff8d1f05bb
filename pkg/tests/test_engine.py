"""
Tests for the randomized engine: generic hom, ext, star, MW and factor.
"""

from fractions import Fraction
from unittest import mock

from django.test import SimpleTestCase
from hypothesis import given, settings

from components_app import engine
from components_app.engine import (
    TrialConfig,
    commute,
    ext1_pi,
    factor,
    hom_pi,
    is_rigid,
    mw_involution,
    run_trials,
    star,
    strongly_commute,
)
from components_app.exceptions import NoMajorityError, PreconditionError
from components_app.multisegments import Multisegment, parse_multisegment
from components_app.patterns import multisegment_of_permutation

from .strategies import multisegments

CONFIG = TrialConfig(trials=3, seed=7)

NONRIGID = "[4,5]+[2,4]+[3,3]+[1,2]"
CC = "[4,7]+[5,6]+[2,5]+[3,4]+[1,3]"
CC_SQUARE = "[4,7]+[2,7]+[5,6]+[3,6]+[4,5]+[1,5]+[2,4]+[3,3]+[1,3]"
LADDER_M1 = "[1,1]+[3,4]+[4,7]"
LADDER_M2 = "[2,4]+[5,6]+[8,8]"
LADDER_PRODUCT = "[1,4]+[3,6]+[4,8]"


def ms(text, n=None):
    return parse_multisegment(text, n)


class TrialConfigTest(SimpleTestCase):

    def test_validation(self):
        with self.assertRaises(PreconditionError):
            TrialConfig(trials=0)
        with self.assertRaises(PreconditionError):
            TrialConfig(workers=0)
        with self.assertRaises(PreconditionError):
            TrialConfig(prime=15)

    def test_streams_are_independent_of_workers(self):
        def draw(field, rng):
            return int(rng.integers(0, 10**9))

        serial = run_trials(TrialConfig(trials=6, seed=3), draw)
        threaded = run_trials(TrialConfig(trials=6, seed=3, workers=3), draw)
        self.assertEqual(serial, threaded)
        self.assertEqual(len(set(serial)), 6)


class AggregationTest(SimpleTestCase):

    def test_minimum(self):
        verdict = engine._minimum([3, 4, 3], 2, CONFIG, "hom")
        self.assertEqual(verdict.value, 3)
        self.assertEqual(verdict.outcomes, (3, 4, 3))

    def test_majority(self):
        verdict = engine._majority(["a", "b", "a"], 2, CONFIG, "star")
        self.assertEqual(verdict.value, "a")

    def test_no_majority(self):
        with self.assertRaises(NoMajorityError) as ctx:
            engine._majority(["a", "b", "c"], 2, CONFIG, "star")
        self.assertEqual(ctx.exception.outcomes, ["a", "b", "c"])
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_tie_is_not_a_majority(self):
        config = TrialConfig(trials=2)
        with self.assertRaises(NoMajorityError):
            engine._majority(["a", "b"], 2, config, "star")

    def test_error_bounds(self):
        config = TrialConfig()
        self.assertEqual(engine._minimum_bound(2, config), Fraction(2, config.prime) ** 5)
        self.assertEqual(engine._majority_bound(2, config), 10 * Fraction(2, config.prime) ** 3)
        self.assertEqual(engine._per_trial_bound(10, 7), Fraction(1))


class HomExtTest(SimpleTestCase):
    """Generic invariants of the smallest non-rigid regular multisegment."""

    def setUp(self):
        self.m = ms(NONRIGID)

    def test_hom(self):
        verdict = hom_pi(self.m, self.m, CONFIG)
        self.assertEqual(verdict.value, 3)
        self.assertEqual(verdict.trials, 3)
        self.assertLess(verdict.error_bound, Fraction(1, 2**40))

    def test_fast_hom(self):
        self.assertEqual(hom_pi(self.m, self.m, CONFIG, fast=True).value, 3)

    def test_ext(self):
        self.assertEqual(ext1_pi(self.m, self.m, CONFIG).value, 2)
        self.assertFalse(is_rigid(self.m, CONFIG).value)
        self.assertTrue(strongly_commute(self.m, self.m, CONFIG).value)

    def test_self_invariants_use_one_point(self):
        with mock.patch.object(engine, "sample_generic", wraps=engine.sample_generic) as sampler:
            hom_pi(self.m, self.m, CONFIG)
            ext1_pi(self.m, self.m, CONFIG)
            is_rigid(self.m, CONFIG)
        self.assertEqual(sampler.call_count, 3 * CONFIG.trials)

    def test_strong_commutation_uses_two_points(self):
        with mock.patch.object(engine, "sample_generic", wraps=engine.sample_generic) as sampler:
            self.assertTrue(strongly_commute(self.m, self.m, CONFIG).value)
        self.assertEqual(sampler.call_count, 2 * CONFIG.trials)

    def test_unbalanced_permutation_components_are_not_rigid(self):
        for w in ((1, 3, 2, 4), (2, 1, 4, 3), (1, 2, 4, 3, 5)):
            with self.subTest(w=w):
                self.assertFalse(is_rigid(multisegment_of_permutation(w), CONFIG).value)
        self.assertTrue(is_rigid(multisegment_of_permutation((4, 3, 2, 1)), CONFIG).value)

    def test_segment_is_rigid(self):
        self.assertTrue(is_rigid(ms("[2,4]", 5), CONFIG).value)

    def test_linked_segments(self):
        upper, lower = ms("[2,3]", 3), ms("[1,2]", 3)
        self.assertEqual(hom_pi(upper, lower, CONFIG).value, 1)
        self.assertEqual(hom_pi(lower, upper, CONFIG).value, 0)
        self.assertFalse(strongly_commute(lower, upper, CONFIG).value)

    def test_requires_same_ambient(self):
        with self.assertRaises(PreconditionError):
            hom_pi(ms("[1,2]", 3), ms("[1,2]", 4), CONFIG)


class StarTest(SimpleTestCase):

    def test_linked_segments(self):
        self.assertEqual(star(ms("[1,2]", 3), ms("[2,3]", 3), CONFIG).value, ms("[1,3]+[2,2]"))
        self.assertEqual(star(ms("[2,3]", 3), ms("[1,2]", 3), CONFIG).value, ms("[2,3]+[1,2]"))

    def test_commute(self):
        self.assertFalse(commute(ms("[1,2]", 3), ms("[2,3]", 3), CONFIG).value)
        self.assertTrue(commute(ms("[1,1]", 3), ms("[3,3]", 3), CONFIG).value)

    def test_nonrigid_square(self):
        m = ms(NONRIGID)
        self.assertEqual(star(m, m, CONFIG).value, m + m)

    def test_non_rigid_component_with_rigid_square(self):
        m = ms(CC)
        square = star(m, m, CONFIG).value
        self.assertEqual(square, ms(CC_SQUARE))
        self.assertFalse(is_rigid(m, CONFIG).value)
        self.assertTrue(is_rigid(square, CONFIG).value)

    def test_ladders(self):
        m1, m2 = ms(LADDER_M1, 8), ms(LADDER_M2, 8)
        product = star(m1, m2, CONFIG).value
        self.assertEqual(product.to_text(), "[4,8]+[3,6]+[1,4]")
        self.assertEqual(product.grdim(), m1.grdim() + m2.grdim())

    def test_star_failure_surfaces_no_majority(self):
        outcomes = [ms("[1,1]", 2), ms("[2,2]", 2), ms("[1,2]", 2)]
        with mock.patch.object(engine, "run_trials", return_value=outcomes):
            with self.assertRaises(NoMajorityError):
                star(ms("[1,1]", 2), ms("[2,2]", 2), CONFIG)

    @given(multisegments(n=4, max_segments=3))
    @settings(max_examples=25, deadline=None)
    def test_empty_is_a_unit(self, m):
        empty = Multisegment.empty(4)
        self.assertEqual(star(m, empty, CONFIG).value, m)
        self.assertEqual(star(empty, m, CONFIG).value, m)


class MWInvolutionTest(SimpleTestCase):

    def test_segment(self):
        self.assertEqual(mw_involution(ms("[1,3]"), CONFIG).value, ms("[1,1]+[2,2]+[3,3]"))

    def test_singletons_back_to_segment(self):
        self.assertEqual(mw_involution(ms("[1,1]+[2,2]+[3,3]"), CONFIG).value, ms("[1,3]"))

    @given(multisegments(max_n=5, max_segments=4))
    @settings(max_examples=40, deadline=None)
    def test_involution(self, m):
        image = mw_involution(m, CONFIG).value
        self.assertEqual(image.grdim(), m.grdim())
        self.assertEqual(mw_involution(image, CONFIG).value, m)


class FactorTest(SimpleTestCase):

    def test_ladders(self):
        product, m1 = ms(LADDER_PRODUCT, 8), ms(LADDER_M1, 8)
        self.assertEqual(factor(product, m1, CONFIG).value, ms(LADDER_M2, 8))

    def test_self_factor_is_empty(self):
        product = ms(LADDER_PRODUCT, 8)
        self.assertTrue(factor(product, product, CONFIG).value.is_empty())

    def test_absent_factor(self):
        verdict = factor(ms("[1,1]+[3,3]"), ms("[2,2]", 3), CONFIG)
        self.assertIsNone(verdict.value)
        self.assertEqual(verdict.error_bound, Fraction(0))

    def test_requires_rigid_factor(self):
        m = ms(NONRIGID)
        with self.assertRaises(PreconditionError):
            factor(m + m, m, CONFIG)
