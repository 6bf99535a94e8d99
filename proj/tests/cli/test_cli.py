#!/usr/bin/env python3
"""Black-box tests of the command-line tool.

usage: test_cli.py NDSYS_BINARY DATA_DIR
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest

BIN = ""
DATA = ""


def run(*args, stdin=None):
    p = subprocess.run([BIN, *args], input=stdin, capture_output=True, text=True, timeout=300)
    return p.returncode, p.stdout, p.stderr


def data(name):
    return os.path.join(DATA, name)


class Cli(unittest.TestCase):
    def test_circle_sensitivity_fails(self):
        code, out, _ = run("check", "--system", "circle-alternating", "--property", "sensitive",
                           "--delta", "1/10", "--horizon", "100")
        self.assertEqual(code, 2)
        report = json.loads(out)
        self.assertEqual(report["verdict"], "FailsWitness")
        self.assertIn("hash", report)
        self.assertIn("digest", report["provenance"])
        self.assertEqual(report["params"]["T"], 100)

    def test_minimal2_example_passes(self):
        code, out, _ = run("example", "run", "minimal2-blocks")
        self.assertEqual(code, 0)
        diff = json.loads(out)
        self.assertEqual(diff["diff"], [])
        self.assertTrue(diff["pass"])

    def test_every_example_passes(self):
        code, out, _ = run("example", "list")
        self.assertEqual(code, 0)
        names = [e["name"] for e in json.loads(out)]
        self.assertEqual(len(names), 8)
        for name in names:
            code, out, _ = run("example", "run", name)
            self.assertEqual(code, 0, out)

    def test_triangular_orbit_csv(self):
        code, out, _ = run("orbit", "--system", "triangular-3pt", "--point", "1", "--horizon", "10")
        self.assertEqual(code, 0)
        rows = out.strip().splitlines()
        self.assertEqual(rows[0], "n,point")
        states = [r.split(",")[1] for r in rows[2:]]
        self.assertEqual(states, "2,2,3,3,3,1,1,1,1,2".split(","))

    def test_eval_on_a_document(self):
        code, out, _ = run("eval", "--system", data("g3.json"), "--point", "3/7", "--n", "2")
        self.assertEqual((code, out.strip()), (0, "5/7"))

    def test_output_is_deterministic(self):
        args = ["check", "--system", "nonsurjective-transitive", "--property", "transitive", "--cover", "1/8",
                "--horizon", "40"]
        first = run(*args)
        self.assertEqual(first[0], 0)
        self.assertEqual(run(*args), first)
        self.assertEqual(run(*args, "--workers", "4"), first)
        ex = run("example", "run", "weak-but-not")
        self.assertEqual(run("example", "run", "weak-but-not", "--workers", "3"), ex)

    def test_malformed_document(self):
        code, out, err = run("check", "--system", data("malformed.json"), "--property", "sensitive")
        self.assertEqual(code, 1)
        self.assertEqual(out, "")
        self.assertIn("at /generators/0/map/pieces/0/1", err)

    def test_usage_errors(self):
        self.assertEqual(run()[0], 1)
        self.assertEqual(run("check", "--system", "circle-alternating")[0], 1)
        self.assertEqual(run("check", "--system", "no-such-fixture", "--property", "sensitive")[0], 1)
        self.assertEqual(run("check", "--system", "circle-alternating", "--property", "sensitive",
                             "--delta", "0.1")[0], 1)
        code, _, err = run("check", "--system", "circle-alternating", "--property", "bogus")
        self.assertEqual(code, 1)
        self.assertTrue(err)

    def test_compare_period(self):
        code, out, _ = run("compare", "--system", data("g3g3.json"), "--mode", "period", "--property",
                           "cofinitely_sensitive", "--horizon", "30", "--cover", "1/8")
        self.assertEqual(code, 0)
        case = json.loads(out)
        self.assertEqual(case["consistency"], "Consistent")
        self.assertEqual(case["k"], 2)

    def test_compare_shift_converse(self):
        code, out, _ = run("compare", "--system", "nonsurjective-transitive", "--mode", "shift", "--property",
                           "sensitive", "--n", "2", "--horizon", "60", "--cover", "1/8")
        case = json.loads(out)
        self.assertNotEqual(case["consistency"], "Violation")
        self.assertEqual(case["directions"][1]["status"], "NotApplicable")
        self.assertIn(code, (0, 3))

    def test_document_defaults_apply(self):
        code, out, _ = run("check", "--system", data("g3.json"), "--property", "kato")
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["params"]["T"], 30)
        self.assertEqual(report["params"]["w"], "1/8")

    def test_emit_curve(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "curve.csv")
            code, _, _ = run("check", "--system", data("g3.json"), "--property", "sensitive", "--emit-curve", path)
            self.assertEqual(code, 0)
            with open(path) as f:
                rows = f.read().strip().splitlines()
            self.assertEqual(rows[0], "n,diam,diam_approx")
            self.assertEqual(rows[1].split(",")[:2], ["0", "1/8"])
            self.assertEqual(rows[2].split(",")[:2], ["1", "1/4"])
            self.assertEqual(len(rows), 32)

    def test_replay_round_trip(self):
        code, out, _ = run("check", "--system", "k-transfer-counterexample", "--property", "mixing", "--horizon", "20")
        self.assertEqual(code, 2)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "report.json")
            with open(path, "w") as f:
                f.write(out)
            code, _, _ = run("check", "--system", "k-transfer-counterexample", "--replay", path)
            self.assertEqual(code, 0)
            # Against a different system the witness must not hold up.
            code, _, _ = run("check", "--system", data("g3.json"), "--replay", path)
            self.assertNotEqual(code, 0)

    def test_hits_and_classify(self):
        code, out, _ = run("hits", "--system", "k-transfer-counterexample", "--u", "{0}", "--v", "{1}", "-T", "10")
        self.assertEqual(code, 0)
        sample = json.loads(out)
        self.assertEqual(sample["members"], [3, 7])
        code, out, _ = run("classify", "--sample", "-", "--class", "syndetic", stdin=out)
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["basis"], "exhaustive")
        code, _, _ = run("classify", "--sample", data("even.json"), "--class", "thick")
        self.assertEqual(code, 2)
        code, _, _ = run("classify", "--sample", data("even.json"), "--class", "syndetic")
        self.assertEqual(code, 0)

    def test_point_property(self):
        code, out, _ = run("check", "--system", "triangular-3pt", "--property", "almost_periodic", "--point", "1",
                           "--epsilon", "1/2", "--horizon", "300", "--sub-horizon", "60")
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(out)["basis"], "trend")

    def test_schema(self):
        code, out, _ = run("schema")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["$schema"], "https://json-schema.org/draft/2020-12/schema")

    def test_property_list(self):
        code, out, _ = run("check", "--list")
        self.assertEqual(code, 0)
        self.assertIn("weak_sensitive", json.loads(out))


if __name__ == "__main__":
    BIN, DATA = sys.argv[1], sys.argv[2]
    unittest.main(argv=sys.argv[:1], verbosity=2)
