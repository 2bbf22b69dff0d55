import json
import pathlib
import subprocess
import sys

import pytest

from combsim.cli import run
from combsim.pmetric import is_ptolemaic, validate

from .conftest import FIXTURES

GOLDEN = pathlib.Path(__file__).parent / "golden"

# (golden name, argv with fixture names, expected exit code)
CASES = [
    ("coherence_nonreflexive", ["check", "coherence", "nonreflexive2.json"], 1),
    ("coherence_no_point", ["check", "coherence", "no_coherence_point2.json"], 1),
    ("coherence_split_class_symbol", ["check", "coherence", "split_class3.json", "--symbol", "a0"], 1),
    ("coherence_zero3", ["check", "coherence", "zero3.json"], 0),
    ("coherence_rigid3_symbol", ["check", "coherence", "rigid3.json", "--symbol", "0"], 0),
    ("pseudometric_zero3", ["check", "pseudometric", "zero3.json"], 0),
    ("pseudometric_rigid3", ["check", "pseudometric", "rigid3.json"], 0),
    ("pseudometric_violation", ["check", "pseudometric", "triangle_violation.json"], 1),
    ("psim_no_point", ["decide", "pseudometric-similar", "no_coherence_point2.json"], 1),
    ("psim_split_class", ["decide", "pseudometric-similar", "split_class3.json"], 1),
    ("psim_collapsed3", ["decide", "pseudometric-similar", "collapsed3.json"], 0),
    ("msim_collapsed3", ["decide", "metric-similar", "collapsed3.json"], 1),
    ("msim_rigid3", ["decide", "metric-similar", "rigid3.json"], 0),
    ("dsim_discrete4_31", ["decide", "discrete-similar", "discrete4_31.json"], 0),
    ("dsim_rigid3", ["decide", "discrete-similar", "rigid3.json"], 1),
    ("rsim_rigid3", ["decide", "rigid-similar", "rigid3.json"], 0),
    ("rsim_discrete4_22", ["decide", "rigid-similar", "discrete4_22.json"], 0),
    ("rsim_equilateral3", ["decide", "rigid-similar", "equilateral3.json"], 1),
    ("similar_relabeled", ["decide", "similar", "discrete4_22.json", "discrete4_22_relabeled.json"], 0),
    ("similar_different", ["decide", "similar", "discrete4_22.json", "discrete4_31.json"], 1),
    ("generate_z2", ["semigroup", "generate", "z2.json"], 0),
    ("generate_rect_pairs", ["semigroup", "generate", "rect_pairs.json"], 0),
    ("classify_equilateral3", ["semigroup", "classify", "equilateral3.json"], 0),
    ("classify_rigid3", ["semigroup", "classify", "rigid3.json"], 1),
    ("h1_singletons3", ["semigroup", "h1", "singletons3.json"], 0),
    ("h1_z2", ["semigroup", "h1", "z2.json"], 1),
    ("rigid_structure_rigid3", ["semigroup", "rigid-structure", "rigid3.json"], 0),
    ("rigid_structure_equilateral3", ["semigroup", "rigid-structure", "equilateral3.json"], 1),
    ("quotient_collapsed3", ["quotient", "collapsed3.json"], 0),
    ("count_partitions_4", ["count", "partitions", "4"], 0),
    ("count_classes_4", ["count", "discrete-classes", "4"], 0),
    ("hr_ratio_10", ["hr-ratio", "10"], 0),
]


def resolve(argv):
    return [str(FIXTURES / a) if a.endswith(".json") else a for a in argv]


def invoke(capsys, argv):
    code = run(resolve(argv))
    out = capsys.readouterr().out
    return code, out


def invoke_json(capsys, argv):
    code, out = invoke(capsys, argv)
    return code, json.loads(out)


class TestExamples:
    def test_no_coherence_point(self, capsys):
        code, out = invoke_json(capsys, ["decide", "pseudometric-similar", "no_coherence_point2.json"])
        assert code == 1
        assert out["verdict"] == "no"
        assert out["refutation"] == "no coherence point"

    def test_count_partitions(self, capsys):
        code, out = invoke(capsys, ["count", "partitions", "4"])
        assert code == 0
        assert out.strip() == "5"

    def test_zero_pseudometric_summary(self, capsys):
        code, out = invoke_json(capsys, ["check", "pseudometric", "zero3.json"])
        assert code == 0
        assert out["summary"] == "valid pseudometric; discrete; Ptolemaic; strongly rigid"


class TestVerdicts:
    def test_reflexivity_failure_named(self, capsys):
        code, out = invoke_json(capsys, ["check", "coherence", "nonreflexive2.json", "--symbol", "a0"])
        assert code == 1
        assert "reflexivity" in json.dumps(out)

    def test_constancy_failure_witness(self, capsys):
        _, out = invoke_json(capsys, ["check", "coherence", "split_class3.json", "--symbol", "a0"])
        assert out["refutation"] == "implication"
        # quadruple (x1, x2, x3, x4) with phi(x1, x3) != phi(x2, x4)
        assert out["witness"] == [2, 2, 0, 1]

    def test_rigid_metric_summary(self, capsys):
        _, out = invoke_json(capsys, ["check", "pseudometric", "rigid3.json"])
        assert out["summary"] == "valid pseudometric; metric; Ptolemaic; strongly rigid"

    def test_triangle_violation(self, capsys):
        code, out = invoke_json(capsys, ["check", "pseudometric", "triangle_violation.json"])
        assert code == 1
        assert out["summary"] == "not a pseudometric"
        assert out["refutation"] == "triangle"

    def test_classify_discrete_metric(self, capsys):
        _, out = invoke_json(capsys, ["semigroup", "classify", "equilateral3.json"])
        assert out["class"] == "null2_plus_identity"

    def test_generate_rectangles(self, capsys):
        _, out = invoke_json(capsys, ["semigroup", "generate", "rect_pairs.json"])
        assert out["stats"]["order"] == 5
        assert out["zero"] is not None

    def test_h1_refutes_z2_at_condition_four(self, capsys):
        code, out = invoke_json(capsys, ["semigroup", "h1", "z2.json"])
        assert code == 1
        assert out["refutation"] == {"condition": 4}

    def test_rigid_structure(self, capsys):
        code, out = invoke_json(capsys, ["semigroup", "rigid-structure", "rigid3.json"])
        assert code == 0
        assert out["stats"]["omega"] == 3
        assert all(c["ok"] for c in out["conditions"].values())

    def test_quotient(self, capsys):
        _, out = invoke_json(capsys, ["quotient", "collapsed3.json"])
        assert out["classes"] == [[0, 1], [2]]
        assert out["quotient"]["dist"] == [["0", "5/2"], ["5/2", "0"]]

    def test_similar_witness(self, capsys):
        code, out = invoke_json(
            capsys, ["decide", "similar", "discrete4_22.json", "discrete4_22_relabeled.json"]
        )
        assert code == 0
        assert sorted(out["witness"]["g"]) == [0, 1, 2, 3]
        assert sorted(v for _, v in out["witness"]["f"]) == ["x", "y"]

    def test_hr_ratio(self, capsys):
        _, out = invoke_json(capsys, ["hr-ratio", "100"])
        assert out["p"] == 190569292
        assert abs(out["ratio"] - 1) <= 0.1


class TestErrors:
    def test_malformed_json(self, capsys):
        code, out = invoke_json(capsys, ["check", "coherence", "malformed.json"])
        assert code == 2
        assert out["verdict"] == "error"

    def test_missing_file(self, capsys):
        code, _ = invoke(capsys, ["check", "coherence", "does_not_exist.json"])
        assert code == 2

    def test_wrong_kind(self, capsys):
        code, _ = invoke(capsys, ["check", "pseudometric", "nonreflexive2.json"])
        assert code == 2

    def test_not_associative(self, capsys):
        code, _ = invoke(capsys, ["semigroup", "generate", "not_associative.json"])
        assert code == 2

    def test_unknown_symbol(self, capsys):
        code, _ = invoke(capsys, ["check", "coherence", "nonreflexive2.json", "--symbol", "zz"])
        assert code == 2

    def test_unknown_subcommand(self, capsys):
        assert run(["frobnicate"]) == 2

    def test_closure_cap(self, capsys):
        code, out = invoke_json(capsys, ["--max-elements", "1", "semigroup", "generate", "rigid3.json"])
        assert code == 3
        assert out["verdict"] == "undecided"

    def test_class_count_cap(self, capsys):
        code, _ = invoke(capsys, ["count", "discrete-classes", "9"])
        assert code == 3

    def test_diagnostics_go_to_stderr(self, capsys):
        run(resolve(["check", "coherence", "malformed.json"]))
        captured = capsys.readouterr()
        assert captured.err.startswith("combsim:")


class TestWitnessRoundTrip:
    @pytest.mark.parametrize(
        "question, name",
        [
            ("pseudometric-similar", "collapsed3.json"),
            ("pseudometric-similar", "rigid3.json"),
            ("metric-similar", "rigid3.json"),
            ("discrete-similar", "discrete4_31.json"),
            ("discrete-similar", "discrete4_22_relabeled.json"),
            ("rigid-similar", "rigid3.json"),
        ],
    )
    def test_witness_revalidates(self, capsys, tmp_path, question, name):
        code, out = invoke_json(capsys, ["decide", question, name])
        assert code == 0
        path = tmp_path / "witness.json"
        path.write_text(json.dumps(out["witness"]))
        code, check = invoke_json(capsys, ["check", "pseudometric", str(path)])
        assert code == 0
        assert check["properties"]["ptolemaic"]
        if out["class"] in ("strongly_rigid", "strongly_rigid_metric"):
            assert check["properties"]["strongly_rigid"]
        if out["class"] == "discrete":
            assert check["properties"]["discrete"]
        d = validate(out["witness"]["dist"])
        assert is_ptolemaic(d)
        # the witness must still be similar to the input
        code, _ = invoke_json(capsys, ["decide", "similar", name, str(path)])
        assert code == 0


class TestGolden:
    @pytest.mark.parametrize("name, argv, expected", CASES, ids=[c[0] for c in CASES])
    def test_matches_golden(self, capsys, name, argv, expected):
        code, out = invoke(capsys, argv)
        assert code == expected
        assert out == (GOLDEN / f"{name}.out").read_text()

    @pytest.mark.parametrize("name, argv, expected", CASES[::6], ids=[c[0] for c in CASES[::6]])
    def test_byte_deterministic_across_processes(self, name, argv, expected):
        cmd = [sys.executable, "-m", "combsim", *resolve(argv)]
        first = subprocess.run(cmd, capture_output=True, check=False)
        second = subprocess.run(cmd, capture_output=True, check=False)
        assert first.returncode == second.returncode == expected
        assert first.stdout == second.stdout
