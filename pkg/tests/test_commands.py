"""
Tests for the `mseg` management command: output formats and exit codes.
"""

import json
from unittest import mock

from django.test import SimpleTestCase, override_settings

from components_app import dispatch
from components_app.dispatch import execute, run_command
from components_app.exceptions import MultisegmentSyntaxError, NoMajorityError
from components_app.harness import CaseResult, SuiteReport
from components_app.runconfig import RunConfig

FAST = ["--trials", "3", "--seed", "2"]


class MsegOutputTest(SimpleTestCase):
    """Human and JSON renderings of deterministic subcommands."""

    def test_dual_json(self):
        code, out = run_command(["dual", "[4,5]", "--json", "--no-timing"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {
            "command": "dual",
            "inputs": ["[4,5]"],
            "value": "[1,2]",
            "trials": 0,
            "error_bound": "0",
            "elapsed_ms": 0,
        })

    def test_grdim_text(self):
        code, out = run_command(["grdim", "[4,5]+[2,4]+[3,3]+[1,2]"])
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), "1 2 2 2 1")

    def test_balanced_reports_witness(self):
        code, out = run_command(["balanced", "[4,5]+[2,4]+[3,3]+[1,2]"])
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("false (type 4231"))

    def test_cw(self):
        code, out = run_command(["cw", "1324", "--json", "--no-timing"])
        value = json.loads(out)["value"]
        self.assertEqual(code, 0)
        self.assertEqual(value["multisegment"], "[4,7]+[3,5]+[2,6]+[1,4]")
        self.assertFalse(value["avoids_1324_2143"])

    def test_enumerate(self):
        code, out = run_command(["enumerate", "--n", "2", "--max-segments", "1"])
        self.assertEqual(code, 0)
        self.assertEqual(out.split(), ["0", "[1,1]", "[2,2]", "[1,2]"])

    def test_peel(self):
        code, out = run_command(["peel", "[1,2]+[2,3]"])
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), "Z([2,3]) * [1,2]")

    def test_ambient_size_from_flag(self):
        code, out = run_command(["dual", "[1,1]", "--n", "3"])
        self.assertEqual(out.strip(), "[3,3]")


class MsegRandomizedTest(SimpleTestCase):

    def test_star(self):
        code, out = run_command(["star", "[1,2]", "[2,3]", "--json", "--no-timing", *FAST])
        payload = json.loads(out)
        self.assertEqual(code, 0)
        self.assertEqual(payload["value"], "[2,2]+[1,3]")
        self.assertEqual(payload["trials"], 3)

    def test_star_recipe(self):
        code, out = run_command(["star", "[3,4]", "[1,2]", "--recipe", *FAST])
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), "[3,4]+[1,2]")

    def test_hom(self):
        code, out = run_command(["hom", "[4,5]+[2,4]+[3,3]+[1,2]", "[4,5]+[2,4]+[3,3]+[1,2]", "--fast", *FAST])
        self.assertEqual((code, out.strip()), (0, "3"))

    def test_factor_absent(self):
        code, out = run_command(["factor", "[1,1]+[3,3]", "[2,2]", *FAST])
        self.assertEqual((code, out.strip()), (0, "absent"))

    def test_verify(self):
        code, out = run_command(["verify", "lm-sweep", "--k", "3", *FAST])
        self.assertEqual(code, 0)
        self.assertIn("8/8 passed", out)

    def test_timing_is_reported(self):
        report = execute("rigid", ["[2,4]"], {}, RunConfig(trials=3))
        self.assertIs(report.value, True)
        self.assertGreaterEqual(report.elapsed_ms, 0)


class MsegExitCodeTest(SimpleTestCase):

    def test_parse_error(self):
        code, out = run_command(["dual", "[4,5"])
        self.assertEqual(code, 2)
        self.assertIn("Bad multisegment", out)

    def test_precondition(self):
        code, _ = run_command(["peel", "[1,2]+[1,3]"])
        self.assertEqual(code, 4)

    def test_bad_prime(self):
        code, _ = run_command(["dual", "[1,2]", "--prime", "15"])
        self.assertEqual(code, 4)

    def test_no_majority(self):
        with mock.patch.object(dispatch.engine, "star", side_effect=NoMajorityError("split vote")):
            code, out = run_command(["star", "[1,2]", "[2,3]"])
        self.assertEqual(code, 3)
        self.assertIn("split vote", out)

    def test_failed_suite(self):
        failing = SuiteReport("lm-sweep", {}, [CaseResult("1234", False, "boom")])
        with mock.patch.object(dispatch, "verify_suite", return_value=failing):
            code, out = run_command(["verify", "lm-sweep"])
        self.assertEqual(code, 1)
        self.assertIn("FAIL 1234: boom", out)

    def test_unknown_command(self):
        with self.assertRaises(MultisegmentSyntaxError):
            execute("frobnicate", [])

    def test_argument_errors_are_parse_errors(self):
        cases = {
            "missing input": ["star", "[1,2]"],
            "unknown suite": ["verify", "nope"],
            "non-integer size": ["hom", "--n", "x", "[1,2]", "[2,3]"],
            "unknown subcommand": ["bogus"],
        }
        for reason, argv in cases.items():
            with self.subTest(reason=reason):
                code, out = run_command(argv)
                self.assertEqual(code, 2)
                self.assertIn("Error:", out)


class RunConfigTest(SimpleTestCase):

    @override_settings(MULTISEGMENT_DEFAULTS={"TRIALS": 9, "SEED": 4})
    def test_settings_defaults(self):
        config = RunConfig.from_settings()
        self.assertEqual((config.trials, config.seed), (9, 4))
        self.assertEqual(config.override({"trials": 3, "seed": None}).trials, 3)
        self.assertEqual(config.trial_config.seed, 4)
