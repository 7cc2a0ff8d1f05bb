"""
Tests for enumeration, the random samplers and the verification suites.
"""

import numpy as np
from django.test import SimpleTestCase

from components_app import harness
from components_app.engine import TrialConfig
from components_app.exceptions import EnumerationLimitError, PreconditionError
from components_app.harness import (
    SUITES,
    enumerate_multisegments,
    random_balanced,
    random_ladder,
    random_regular,
    segment_catalog,
    verify_suite,
)
from components_app.multisegments import DimVector
from components_app.patterns import is_balanced, is_ladder, is_regular

CONFIG = TrialConfig(trials=3, seed=1)


def texts(items):
    return [m.to_text() for m in items]


class EnumerationTest(SimpleTestCase):

    def test_catalog_order(self):
        self.assertEqual([str(s) for s in segment_catalog(2)], ["[1,1]", "[2,2]", "[1,2]"])

    def test_single_segments(self):
        self.assertEqual(
            texts(enumerate_multisegments(n=2, max_segments=1)),
            ["0", "[1,1]", "[2,2]", "[1,2]"],
        )

    def test_regular_filter(self):
        self.assertEqual(
            texts(enumerate_multisegments(n=2, max_segments=2, regular=True)),
            ["0", "[1,1]", "[2,2]", "[1,2]", "[2,2]+[1,1]"],
        )

    def test_ladder_filter(self):
        for m in enumerate_multisegments(n=3, max_segments=3, ladder=True):
            self.assertTrue(is_ladder(m))

    def test_by_dimension(self):
        self.assertEqual(texts(enumerate_multisegments(dims=DimVector((1, 1)))), ["[1,2]", "[2,2]+[1,1]"])
        for m in enumerate_multisegments(dims=DimVector((1, 2, 1))):
            self.assertEqual(m.grdim().counts, (1, 2, 1))

    def test_each_multisegment_once(self):
        items = texts(enumerate_multisegments(n=3, max_segments=3))
        self.assertEqual(len(items), len(set(items)))
        self.assertEqual(len(items), 1 + 6 + 21 + 56)

    def test_limits(self):
        with self.assertRaises(EnumerationLimitError):
            list(enumerate_multisegments(n=6, max_segments=6, limit=1000))
        with self.assertRaises(EnumerationLimitError):
            list(enumerate_multisegments(dims=DimVector((2, 2, 2)), limit=2))
        with self.assertRaises(PreconditionError):
            list(enumerate_multisegments(n=3))


class SamplerTest(SimpleTestCase):

    def setUp(self):
        self.rng = np.random.default_rng(0)

    def test_samplers(self):
        for _ in range(20):
            self.assertTrue(is_regular(random_regular(self.rng, 6, 4)))
            self.assertTrue(is_ladder(random_ladder(self.rng, 6, 4)))
            m = random_balanced(self.rng, 6, 4)
            self.assertTrue(is_regular(m) and is_balanced(m))


class SuiteTest(SimpleTestCase):

    def test_suite_names(self):
        self.assertIn("worked-examples", SUITES)
        with self.assertRaises(PreconditionError):
            verify_suite("nope", {}, CONFIG)

    def test_lm_sweep(self):
        report = verify_suite("lm-sweep", {"k": 4}, CONFIG)
        self.assertEqual(len(report.cases), 2 + 6 + 24)
        self.assertTrue(report.ok, [c.to_json() for c in report.cases if not c.passed])
        self.assertEqual(report.summary(), "lm-sweep: 32/32 passed")
        labels = [case.label for case in report.cases]
        self.assertEqual(labels[:3], ["12", "21", "123"])
        self.assertIn("1324", labels)
        self.assertIn("2143", labels)

    def test_lm_sweep_covers_every_size(self):
        self.assertEqual(len(harness._lm_sweep(None, {"k": 5})), 2 + 6 + 24 + 120)

    def test_fixed_examples(self):
        report = verify_suite("worked-examples", {}, CONFIG)
        self.assertEqual(report.failed, 0, [c.to_json() for c in report.cases if not c.passed])
        self.assertEqual(report.to_json()["total"], 16)

    def test_sweeps_are_reproducible(self):
        params = {"samples": 4, "n": 4, "max_segments": 3}
        serial = verify_suite("mw-involution", params, CONFIG)
        threaded = verify_suite("mw-involution", params, TrialConfig(trials=3, seed=1, workers=2))
        self.assertEqual(serial.to_json(), threaded.to_json())
        self.assertTrue(serial.ok)

    def test_small_sweeps(self):
        params = {"samples": 3, "n": 4, "max_segments": 2}
        for suite in ("balanced-vs-rigid", "duality-star", "matching-vs-star"):
            with self.subTest(suite=suite):
                self.assertTrue(verify_suite(suite, params, CONFIG).ok)
