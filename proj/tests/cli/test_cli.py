"""Behaviour of the difftan executable: exit codes, schema conformance, determinism."""

import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

EXE = None
SCHEMA = None

# One invocation per verb, all expected to succeed.
RUNS = [
    ["tangent-internal", "wedge(2)", "origin"],
    ["tangent-internal", "product[wedge(2), half_line]", "origin"],
    ["tangent-internal", "generated(2, 1)", "origin", "--slopes", "1,2,1/2"],
    ["tangent-external", "half_line", "origin"],
    ["tangent-external", "orbit_quotient(4)", "origin", "--order", "5"],
    ["beta", "euclidean(3)", "(1, 2, 3)"],
    ["beta", "irrational_torus(sqrt(2))", "origin"],
    ["beta", "orbit_quotient(2)", "origin"],
    ["bundle-check", "wedge(2)", "--base", "(0, 0)", "--fibre", "(u, u)"],
    ["bundle-check", "product[wedge(2), euclidean(1)]", "--vars", "u",
     "--base", "(u, 0, u^2)", "--fibre", "(1, 0, u)"],
    ["fibrewise", "wedge(2)", "--base", "(0, 0)", "--first", "(u, 0)", "--second", "(0, u)"],
    ["trivialize", "fine_vector(2)"],
    ["fine", "wedge(3)", "origin"],
    ["fine", "generated(2, 1)", "origin"],
    ["table"],
]


def run(args, fmt="json"):
    cmd = [EXE] + args
    if fmt:
        cmd += ["--format", fmt]
    return subprocess.run(cmd, capture_output=True, text=True, timeout=120)


class Schema(unittest.TestCase):
    def test_every_verb_validates(self):
        validator = jsonschema.Draft202012Validator(SCHEMA)
        for args in RUNS:
            with self.subTest(args=args):
                r = run(args)
                self.assertEqual(r.returncode, 0, r.stderr)
                report = json.loads(r.stdout)
                errors = [e.message for e in validator.iter_errors(report)]
                self.assertEqual(errors, [])
                self.assertEqual(report["verb"], args[0])

    def test_schema_rejects_missing_fields(self):
        validator = jsonschema.Draft202012Validator(SCHEMA)
        self.assertFalse(validator.is_valid({"verb": "beta", "space": "wedge(2)", "point": "(0, 0)"}))
        self.assertFalse(validator.is_valid({"verb": "unknown"}))


class Values(unittest.TestCase):
    def report(self, args):
        r = run(args)
        self.assertEqual(r.returncode, 0, r.stderr)
        return json.loads(r.stdout)

    def test_wedge_dimensions(self):
        rep = self.report(["beta", "wedge(2)", "origin"])
        self.assertEqual(rep["internal"]["dim"], 2)
        self.assertEqual(rep["external"]["dim"], 2)
        self.assertEqual(rep["beta"]["matrix"], [["1", "0"], ["0", "1"]])

    def test_torus_beta(self):
        rep = self.report(["beta", "irrational_torus(sqrt(2))", "origin"])
        self.assertEqual((rep["internal"]["dim"], rep["external"]["dim"]), (1, 0))
        self.assertFalse(rep["beta"]["injective"])

    def test_reference_row_present_for_table_spaces(self):
        rep = self.report(["beta", "half_line", "origin"])
        self.assertIn("reference_row", rep["provenance"])

    def test_table_passes(self):
        rep = self.report(["table"])
        self.assertTrue(rep["passed"])
        checked = [c for row in rep["rows"] for c in (row["internal"], row["external"])
                   if c["status"] != "out-of-scope"]
        self.assertEqual(len(checked), 23)
        self.assertTrue(all(c["status"] == "pass" for c in checked))

    def test_bundle_counterexample(self):
        rep = self.report(["bundle-check", "wedge(2)", "--base", "(0, 0)", "--fibre", "(u, u)"])
        self.assertFalse(rep["hector"]["member"])
        self.assertTrue(rep["dvs"]["member"])


class ExitCodes(unittest.TestCase):
    def test_parse_error_is_usage(self):
        r = run(["tangent-internal", "wedge(2", "origin"])
        self.assertEqual(r.returncode, 2)
        self.assertIn("1:8", r.stderr)

    def test_point_outside_space_is_usage(self):
        self.assertEqual(run(["tangent-internal", "wedge(2)", "(1, 1)"]).returncode, 2)

    def test_invalid_parameter_is_usage(self):
        self.assertEqual(run(["tangent-internal", "wedge(1)", "origin"]).returncode, 2)

    def test_missing_option_is_usage(self):
        self.assertEqual(run(["bundle-check", "wedge(2)", "--base", "(0, 0)"]).returncode, 2)

    def test_order_out_of_range_is_usage(self):
        self.assertEqual(run(["tangent-external", "wedge(2)", "origin", "--order", "1"]).returncode, 2)

    def test_unknown_verb_is_usage(self):
        self.assertEqual(run(["tangent"], fmt=None).returncode, 2)

    def test_unsupported_group_is_failure(self):
        self.assertEqual(run(["trivialize", "wedge(2)"]).returncode, 1)

    def test_non_members_is_failure(self):
        r = run(["fibrewise", "wedge(2)", "--base", "(0, 0)", "--first", "(u, u)", "--second", "(0, u)"])
        self.assertEqual(r.returncode, 1)
        self.assertIn("NotMembers", r.stderr)


class Output(unittest.TestCase):
    def test_deterministic(self):
        for args in RUNS:
            with self.subTest(args=args):
                self.assertEqual(run(args).stdout, run(args).stdout)

    def test_out_file_matches_stdout(self):
        args = ["beta", "generated(2, 1)", "origin", "--slopes", "1,2,3"]
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "report.json")
            r = run(args + ["--out", path])
            self.assertEqual(r.returncode, 0, r.stderr)
            with open(path) as f:
                self.assertEqual(f.read(), run(args).stdout)

    def test_text_is_default(self):
        r = run(["tangent-internal", "wedge(2)", "origin"], fmt=None)
        self.assertEqual(r.returncode, 0)
        self.assertIn("dim: 2", r.stdout)
        with self.assertRaises(json.JSONDecodeError):
            json.loads(r.stdout)


if __name__ == "__main__":
    EXE = sys.argv[1]
    with open(sys.argv[2]) as f:
        SCHEMA = json.load(f)
    unittest.main(argv=[sys.argv[0], "-v"])
