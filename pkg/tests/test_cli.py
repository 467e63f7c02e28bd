import json
import subprocess
import sys

import pytest

from rowcox import parse_nrf
from rowcox.cli import main, run
from rowcox.io import Report


@pytest.fixture
def paths(corpus):
    return {name: str(path) for group in corpus.values() for name, path in group.items()}


def structured(argv):
    report, code, _ = run(argv + ["--format", "structured"])
    return json.loads(report.to_json()), code


def test_corpus_is_bundled(corpus):
    assert {"example6", "m3", "n5", "antichain3"} <= set(corpus["posets"])
    assert {"a1", "d4", "e6"} <= set(corpus["dynkin"])
    assert set(corpus["nrf"]) == {"corrupted"}


def test_ideals_command(paths):
    doc, code = structured(["ideals", paths["chain2"]])
    assert code == 0
    assert [entry["ideal"] for entry in doc["results"]["ideals"]] == ["{}", "{x1}", "{x1,x2}"]


def test_rowmotion_command(paths):
    doc, code = structured(["rowmotion", paths["chain2"]])
    assert code == 0 and doc["results"]["permutation"] == [2, 0, 1]


def test_coxeter_on_example(paths):
    doc, code = structured(["coxeter", paths["example6"]])
    assert code == 0
    assert doc["results"]["coxeter"][0] == [-1] * 6
    assert doc["results"]["minimal_polynomial"]["text"] == "x^3 - x^2 - x + 1"
    assert doc["results"]["hopkins_identity"] is False


def test_coxeter_on_ideal_lattice_passes(paths):
    doc, code = structured(["coxeter", "--ideal-lattice", paths["antichain3"]])
    assert code == 0 and doc["results"]["hopkins_identity"] is True


def test_auslander_negative_verdict_is_not_an_error(paths):
    doc, code = structured(["auslander", paths["n5"]])
    assert code == 0
    assert doc["results"]["auslander_regular"] is False
    assert set(doc["results"]["witness"]) == {"degree", "injective_summand", "projective_dimension", "coresolved_projective"}


def test_auslander_on_ideal_lattice(paths):
    doc, code = structured(["auslander", "--ideal-lattice", paths["chain3"]])
    assert code == 0
    assert doc["results"]["grade_bijection_is_rowmotion"] is True


def test_hopkins_search_enumerate(paths):
    doc, code = structured(["hopkins-search", "--enumerate", "3"])
    assert code == 0
    assert doc["summary"]["tested"] == 1 + 1 + 3 + 19
    assert doc["results"]["violations"] == []


def test_hopkins_search_parallel_matches_serial():
    serial, _ = structured(["hopkins-search", "--random", "30", "--size", "5-6", "--seed", "3"])
    parallel, _ = structured(["hopkins-search", "--random", "30", "--size", "5-6", "--seed", "3", "--jobs", "2"])
    serial["command"].pop("jobs")
    parallel["command"].pop("jobs")
    assert serial == parallel


def test_dynkin_from_spec_and_flags(paths):
    by_file, code = structured(["dynkin", paths["d4"]])
    assert code == 0
    case = by_file["results"]["cases"][0]
    assert case["indecomposables"] == case["positive_roots"] == 12
    assert case["coxeter_cross_check"] and case["identity_holds"]
    by_flags, _ = structured(["dynkin", "--type", "D", "--rank", "4", "--orientation", "><<"])
    assert by_flags["results"] == by_file["results"]


def test_dynkin_all_orientations():
    doc, code = structured(["dynkin", "--type", "A", "--rank", "4", "--all-orientations"])
    assert code == 0 and doc["summary"] == {"orientations": 8, "passed": 8}


def test_exported_nrf_verifies(tmp_path):
    target = tmp_path / "a3.json"
    assert main(["dynkin", "--type", "A", "--rank", "3", "--export-nrf", str(target)]) == 0
    assert parse_nrf(target).size == 6
    doc, code = structured(["verify-nrf", str(target)])
    assert code == 0 and doc["results"]["passed"] is True


def test_verify_nrf_corrupted_exits_one(paths, capsys):
    assert main(["verify-nrf", paths["corrupted"]]) == 1
    assert "status: FAIL" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["coxeter", "missing.json"],
        ["coxeter", "--char", "4", "EXAMPLE"],
        ["hopkins-search", "--enumerate", "7"],
        ["hopkins-search", "--random", "10", "--size", "6"],
        ["hopkins-search"],
        ["dynkin", "--type", "D", "--rank", "3"],
        ["dynkin"],
        ["ideals", "EXAMPLE", "--ideal-cap", "0"],
    ],
)
def test_configuration_errors_exit_two(paths, argv, capsys):
    argv = [paths["example6"] if a == "EXAMPLE" else a for a in argv]
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("rowcox: ")


def test_malformed_input_exits_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}')
    assert main(["ideals", str(bad)]) == 2
    bad.write_text("[1, 2")
    assert main(["verify-nrf", str(bad)]) == 2


def test_error_report_is_structured(tmp_path, capsys):
    assert main(["--format", "structured", "coxeter", str(tmp_path / "none.json")]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["exit_code"] == 2 and "error" in doc["results"]


def test_global_flags_either_side(paths):
    before, _, _ = run(["--format", "structured", "--char", "0", "coxeter", paths["chain2"]])
    after, _, _ = run(["coxeter", paths["chain2"], "--format", "structured", "--char", "0"])
    assert before.to_json() == after.to_json()


def test_prime_characteristic_runs(paths):
    doc, code = structured(["auslander", "--char", "3", paths["example6"]])
    assert code == 0 and doc["command"]["char"] == 3
    assert doc["results"]["grade_bijection"]["1"] == "6"


def test_report_round_trip(paths):
    report, _, _ = run(["coxeter", paths["example6"], "--format", "structured"])
    again = Report.from_json(report.to_json())
    assert again.to_json() == report.to_json()


def test_module_entry_point(paths):
    out = subprocess.run(
        [sys.executable, "-m", "rowcox", "rowmotion", paths["chain1"]], capture_output=True, text=True, check=False
    )
    assert out.returncode == 0 and out.stdout.startswith("rowcox rowmotion")


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "hopkins-search" in capsys.readouterr().out
