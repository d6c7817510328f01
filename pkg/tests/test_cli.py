"""Command-line behavior: exit codes, report formats, error surfaces."""

import json
import subprocess
import sys

import pytest

from cyclomod import fileio
from cyclomod.cli import main
from cyclomod.config import GroupConfig
from cyclomod.constructions import (
    ExtensionData,
    Theorem1Input,
    carry_cocycle,
    j_module,
)
from cyclomod.modules import augmentation_ideal, direct_sum, trivial_module
from cyclomod.oracle import Iso, modules_isomorphic

C31 = GroupConfig(3, 1, 11)
C32 = GroupConfig(3, 2, 12)


@pytest.fixture()
def docs(tmp_path):
    fileio.save_file(tmp_path / "ideal31.json", augmentation_ideal(C31))
    fileio.save_file(tmp_path / "j1n2.json", j_module(C32, 1))
    fileio.save_file(tmp_path / "j2n2.json", j_module(C32, 2))
    fileio.save_file(tmp_path / "carry31.json", carry_cocycle(trivial_module(C31, 1)))
    jm = j_module(C31, 1)
    ideal = augmentation_ideal(C31)
    ds = direct_sum(jm, ideal)
    data = Theorem1Input(
        module=ds.module,
        free_witness=(ds.injections[0].apply(jm.generator(0)),),
        ideal_witness=ds.injections[1].apply(ideal.generator(0)),
        rank=1,
    )
    fileio.save_file(tmp_path / "pipe.json", data)
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cohomology_table(docs, capsys):
    code, out, _ = run(
        capsys, "--format", "machine", "cohomology", str(docs / "ideal31.json")
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["levels"] == [{"level": 1, "even": [], "odd": [1]}]


def test_cohomology_maps_flag(docs, capsys):
    code, out, _ = run(
        capsys, "--format", "machine", "cohomology", str(docs / "j2n2.json"), "--maps"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["levels"][0]["even"] == [1]
    assert doc["levels"][1]["even"] == [2]
    assert len(doc["maps"]) == 4


def test_wrong_document_kind_fails(docs, capsys):
    code, out, err = run(capsys, "delta", str(docs / "carry31.json"))
    assert code == 1
    assert out == ""
    assert err.startswith("ParseError:")


def test_missing_file_fails(docs, capsys):
    code, _, err = run(capsys, "cohomology", str(docs / "absent.json"))
    assert code == 1
    assert "ParseError" in err


def test_usage_error_exits_one(capsys):
    code, _, err = run(capsys, "verify", "prop4", "--bogus")
    assert code == 1
    assert "error" in err


def test_delta_compare_same(docs, capsys):
    code, out, _ = run(
        capsys,
        "--format",
        "machine",
        "delta-compare",
        str(docs / "j1n2.json"),
        str(docs / "j1n2.json"),
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "DiagramIso"


def test_delta_compare_distinct(docs, capsys):
    code, out, _ = run(
        capsys,
        "--format",
        "machine",
        "delta-compare",
        str(docs / "j1n2.json"),
        str(docs / "j2n2.json"),
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "NotIsomorphic"
    assert "level 2" in doc["reason"]


def test_verify_machine_report_deterministic(capsys):
    code1, out1, _ = run(capsys, "--format", "machine", "--seed", "5", "verify", "yakovlev")
    code2, out2, _ = run(capsys, "--format", "machine", "--seed", "5", "verify", "yakovlev")
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["status"] == "pass"


def test_verify_capped_search_exits_two(capsys):
    code, out, _ = run(
        capsys, "--format", "machine", "--max-free-rank", "0", "verify", "theorem1"
    )
    assert code == 2
    assert json.loads(out)["status"] == "undecided"


def test_verify_lemma3_capped(capsys):
    code, out, _ = run(
        capsys,
        "--format",
        "machine",
        "--p",
        "3",
        "--n",
        "1",
        "verify",
        "lemma3",
        "--e-max",
        "1",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["knobs"]["e_max"] == 1
    assert doc["status"] == "pass"


def test_out_flag_writes_file(docs, capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        "--format",
        "machine",
        "--out",
        str(target),
        "cohomology",
        str(docs / "ideal31.json"),
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["command"] == "cohomology"


def test_construct_j_module_save(docs, capsys, tmp_path):
    target = tmp_path / "j1.json"
    code, _, _ = run(capsys, "construct", "j-module", "--e", "1", "--save", str(target))
    assert code == 0
    saved = fileio.load_file(target)
    assert isinstance(modules_isomorphic(saved, j_module(GroupConfig(3, 1, 13))), Iso)


def test_construct_lemma2_reports_kernel(docs, capsys):
    code, out, _ = run(
        capsys, "--format", "machine", "construct", "lemma2", "--input", str(docs / "pipe.json")
    )
    assert code == 0
    assert json.loads(out)["kernel_invariants"] == [1, 1]


def test_construct_cocycle_round_trip(docs, capsys, tmp_path):
    target = tmp_path / "rt.json"
    code, _, _ = run(
        capsys, "construct", "cocycle", "--extension", str(docs / "carry31.json"),
        "--save", str(target),
    )
    assert code == 0
    assert isinstance(fileio.load_file(target), ExtensionData)


def test_env_var_sets_default_precision(capsys, monkeypatch):
    monkeypatch.setenv("CYCLOMOD_PRECISION", "9")
    code, out, _ = run(capsys, "--format", "machine", "construct", "j-module", "--e", "1")
    assert code == 0
    assert "N=9" in json.loads(out)["config"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cyclomod.cli", "--format", "machine", "verify", "prop4"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
