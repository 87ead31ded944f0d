import json
from pathlib import Path

import jsonschema
import pytest

from nakcot import cli
from nakcot.core.labels import EXAMPLE_U, EXAMPLE_W, EXAMPLE_U_PRIME

DATA = Path(__file__).parent / "data"


def run(tmp_path, *argv, name="report.json"):
    out = tmp_path / name
    code = cli.main([*argv, "--out", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


@pytest.fixture
def label_files(tmp_path):
    paths = {}
    for key, labels in (("W", EXAMPLE_W), ("U", EXAMPLE_U), ("Up", EXAMPLE_U_PRIME)):
        p = tmp_path / f"{key}.txt"
        p.write_text("# figure labels\n" + "\n".join(labels) + "\n")
        paths[key] = "@" + str(p)
    return paths


def test_enumerate_semisimple(tmp_path):
    code, rep = run(tmp_path, "enumerate", "--n", "1", "--m", "2", "cotorsion")
    assert code == 0
    assert rep["certificates"]["count"] == 1


def test_enumerate_2_2_matches_golden(tmp_path):
    code, rep = run(tmp_path, "enumerate", "--n", "2", "--m", "2", "cotorsion")
    golden = json.loads((DATA / "enumerate_2_2.json").read_text())
    got = {(tuple(p["U"]), tuple(p["V"])) for p in rep["certificates"]["cotorsion_pairs"]}
    want = {(tuple(p["U"]), tuple(p["V"])) for p in golden["cotorsion_pairs"]}
    assert code == 0 and got == want


def test_report_schema_valid(tmp_path):
    schema = cli.load_schema("report")
    code, rep = run(tmp_path, "enumerate", "--n", "4", "--m", "2", "stt", "--W", "1:1,1:2,2:2,3:2,4:1")
    jsonschema.validate(rep, schema)
    assert code == 0 and rep["verdicts"]
    # a rejected job still carries every field
    code, rep = run(tmp_path, "enumerate", "--n", "3", "--m", "2", "stt", "--W", "1:1,1:2,2:2,3:1")
    jsonschema.validate(rep, schema)
    assert code == 3 and rep["verdicts"] == [] and rep["rejected_hypotheses"]


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--n", "3", "--m", "2", "--U", "7:1"],
        ["enumerate", "--n", "3", "--m", "2", "--U", "banana"],
        ["verify-main1", "--n", "4", "--m", "3", "--U", "M^1_2"],
        ["enumerate", "--n", "3", "--m", "1"],
        ["enumerate", "--n", "3"],
        ["verify-main1", "--n", "3", "--m", "2", "stt"],
        ["enumerate", "--n", "3", "--m", "2", "--U", "@/nonexistent/file"],
        ["--bogus-flag"],
    ],
)
def test_bad_input_exit_2(tmp_path, argv):
    code, _ = run(tmp_path, *argv)
    assert code == 2


def test_spec_file_roundtrip_and_schema_errors(tmp_path):
    spec = {
        "schema_version": "1.0",
        "algebra": {"n": 2, "m": 2, "char": 2},
        "task": "enumerate",
        "inputs": {"kind": "cotorsion"},
        "options": {},
    }
    p = tmp_path / "job.json"
    p.write_text(json.dumps(spec))
    code, rep = run(tmp_path, "--spec", str(p))
    assert code == 0 and rep["certificates"]["count"] == 2
    spec["task"] = "dance"
    p.write_text(json.dumps(spec))
    assert run(tmp_path, "--spec", str(p))[0] == 2
    p.write_text("{not json")
    assert run(tmp_path, "--spec", str(p))[0] == 2


def test_main2_example_rejected_then_evaluated(tmp_path, label_files, capsys):
    code, rep = run(tmp_path, "verify-main2", "--n", "9", "--m", "4", "--W", label_files["W"])
    assert code == 3
    assert rep["status"] == "rejected"
    assert "hypothesis I ⊊ W" in capsys.readouterr().err
    code, rep = run(
        tmp_path, "verify-main2", "--n", "9", "--m", "4", "--W", label_files["W"], "--ignore-hypothesis"
    )
    assert code == 0
    counts = {v["name"]: v for v in rep["verdicts"]}
    assert counts["counts_equal"]["value"]


def test_main1_example(tmp_path, label_files):
    code, rep = run(tmp_path, "verify-main1", "--n", "9", "--m", "4", "--U", label_files["U"], "--i", "1")
    assert code == 0
    jsonschema.validate(rep, cli.load_schema("report"))


def test_main5_exit_codes(tmp_path, label_files):
    base = ["verify-main5", "--n", "9", "--m", "4", "--i", "1", "--j", "2"]
    assert run(tmp_path, *base, "--U", label_files["U"])[0] == 3
    code, rep = run(tmp_path, *base, "--U", label_files["U"], "--ignore-hypothesis")
    assert code == 1 and rep["counterexample"] is not None
    inj = "1:1,1:2,1:3,1:4,2:4,3:4,4:4,5:4,6:4"
    code, rep = run(tmp_path, *base, "--W", inj)
    assert code == 3


def test_enumerate_in_G_contains_X_Y1(tmp_path, label_files):
    from nakcot.core.labels import load_label_dictionary
    from conftest import cat_of, named
    from nakcot.cotorsion import check_cotorsion_pair, main1_phi
    from nakcot.subcat.base import right_perp

    cat = cat_of(9, 4)
    U, Up = named(cat, EXAMPLE_U), named(cat, EXAMPLE_U_PRIME)
    xy = main1_phi(check_cotorsion_pair(None, U, right_perp(U)), 1, check_cotorsion_pair(None, Up, right_perp(Up)))
    wlabels = ",".join(EXAMPLE_W)
    code, rep = run(tmp_path, "enumerate", "--n", "9", "--m", "4", "cotorsion", "--ambient", f"G({wlabels})")
    assert code == 0
    pairs = rep["certificates"]["cotorsion_pairs"]
    assert len(pairs) == 14
    assert {"U": xy.U.labels, "V": xy.V.labels} in [{"U": p["U"], "V": p["V"]} for p in pairs]


def test_reports_and_dot_are_deterministic(tmp_path, label_files):
    argv = ["verify-main1", "--n", "4", "--m", "3", "--U", "1:3,2:3,3:2,4:1,1:1", "--i", "1"]
    outs = []
    for k in range(2):
        dot = tmp_path / f"g{k}.dot"
        code, _ = run(tmp_path, *argv, "--dot", str(dot), name=f"r{k}.json")
        outs.append(((tmp_path / f"r{k}.json").read_bytes(), dot.read_bytes() if dot.exists() else b"", code))
    assert outs[0] == outs[1]


def test_dot_legend_and_bijection_graph(tmp_path, label_files):
    dot = tmp_path / "main2.dot"
    code, _ = run(
        tmp_path, "verify-main2", "--n", "9", "--m", "4", "--W", label_files["W"], "--ignore-hypothesis",
        "--convention", "usage", "--dot", str(dot),
    )
    assert code == 0
    text = dot.read_text()
    assert text.startswith("// ")
    assert "// legend: convention=usage" in text
    assert (tmp_path / "main2_bijection.dot").exists()
    assert "M^1_2" in text


def test_lattice_dot(tmp_path):
    dot = tmp_path / "lat.dot"
    code, _ = run(tmp_path, "enumerate", "--n", "3", "--m", "2", "--dot", str(dot))
    assert code == 0 and "digraph" in dot.read_text()


def test_timing_only_on_request(tmp_path):
    _, rep = run(tmp_path, "enumerate", "--n", "2", "--m", "2")
    assert rep["timing"] is None
    _, rep = run(tmp_path, "enumerate", "--n", "2", "--m", "2", "--timing")
    assert rep["timing"]["seconds"] >= 0


def test_small_lemma_suite(tmp_path):
    code, rep = run(tmp_path, "lemma-suite", "--n", "3", "--m", "2", "--samples", "5", "--chars", "2,3")
    assert code == 0
    names = {v["name"] for v in rep["verdicts"]}
    assert {"lemma_y1", "lemma_y2", "lemma_imp", "wakamatsu", "characteristic_independence"} <= names
