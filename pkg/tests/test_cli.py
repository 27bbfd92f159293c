from __future__ import annotations

import json
import subprocess
import sys

import pytest

from boxlogic import cli, pr_box_state
from boxlogic.report import Check, Report

SPEC22 = '{"left": {"inputs": [2, 2]}, "right": {"inputs": [2, 2]}}'


@pytest.fixture
def spec(tmp_path):
    path = tmp_path / "world.json"
    path.write_text(SPEC22)
    return str(path)


@pytest.fixture
def pr_file(tmp_path):
    path = tmp_path / "pr.json"
    path.write_text(json.dumps(pr_box_state().to_json_dict()))
    return str(path)


def test_chsh_pr_prints_four(capsys):
    assert cli.main(["chsh", "--pr"]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_chsh_behavior_file(capsys, pr_file):
    assert cli.main(["chsh", "--behavior", pr_file]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_states_counts(capsys, spec, tmp_path):
    out = tmp_path / "out"
    assert cli.main(["states", "--spec", spec, "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "two-valued states: 16" in text
    assert "polytope vertices: 24 (16 deterministic)" in text
    doc = json.loads((out / "states.json").read_text())
    assert doc["counts"] == {"two_valued_states": 16, "vertices": 24, "deterministic_vertices": 16}
    assert len(json.loads((out / "polytope.json").read_text())["vertices"]) == 24


def test_verify_passes_and_reports(capsys, spec, tmp_path):
    out = tmp_path / "out"
    assert cli.main(["verify", "--spec", spec, "--out", str(out)]) == 0
    doc = json.loads((out / "verify.json").read_text())
    assert doc["status"] == "pass"
    ids = [c["check_id"] for c in doc["checks"]]
    assert "weak_tensor_product.ii'" in ids and "atoms_product" in ids
    assert all(c["status"] == "pass" for c in doc["checks"])
    assert doc["properties"]["corollary"] == {
        "atoms_product": True, "components_non_boolean": True, "all_regular": True
    }


def test_verify_exit_is_conjunction(capsys, spec, monkeypatch):
    def failing(*args):
        return Report("free_orthodistributive", [Check("i", "fail", {}, {"reason": "injected"})])

    monkeypatch.setattr(cli, "verify_free_orthodistributive", failing)
    assert cli.main(["verify", "--spec", spec]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "fail"


def test_verify_is_byte_deterministic(spec, tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    cli.main(["verify", "--spec", spec, "--out", str(a)])
    cli.main(["verify", "--spec", spec, "--out", str(b)])
    assert (a / "verify.json").read_bytes() == (b / "verify.json").read_bytes()


def test_build_outputs(spec, tmp_path, capsys):
    out = tmp_path / "out"
    assert cli.main(["build", "--spec", spec, "--out", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == [
        f"logic_{t}.{e}" for t in ("composite", "left", "right") for e in ("dot", "json")
    ]
    assert json.loads((out / "logic_composite.json").read_text())["size"] == 82
    assert "composite: 82 elements, 16 atoms" in capsys.readouterr().out


def test_build_dot_to_stdout(spec, capsys):
    assert cli.main(["build", "--spec", spec, "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph logic_composite {")


def test_axioms(spec, capsys):
    assert cli.main(["axioms", "--spec", spec]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["checks"]) == 24
    assert doc["properties"]["composite"]["lattice"] is False


def test_evaluate(spec, pr_file, capsys):
    assert cli.main(["evaluate", "--spec", spec, "--behavior", pr_file, "[1:0, 1:0]"]) == 0
    assert capsys.readouterr().out.strip() == "1/2"
    assert cli.main(["evaluate", "--spec", spec, "--pr", "[2:0, 2:1] + [2:1, 2:0]"]) == 0
    assert capsys.readouterr().out.strip() == "1"


@pytest.mark.parametrize("argv, error", [
    (["build"], "BoxLogicError"),
    (["chsh"], "BoxLogicError"),
    (["evaluate", "--pr", "--spec", "SPEC", "[1:0, *] + [1:0, *]"], "PreconditionError"),
    (["build", "--spec", "SPEC", "--budget", "10"], "ResourceError"),
])
def test_errors_are_json_on_stderr(argv, error, spec, capsys):
    argv = [spec if a == "SPEC" else a for a in argv]
    assert cli.main(argv) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == error and err["message"]


def test_bad_spec_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"left": {"inputs": [2, 0]}, "right": {"inputs": [2]}}')
    assert cli.main(["build", "--spec", str(path)]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "SpecError"
    assert "left.inputs[1]" in err["message"]


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "boxlogic", "chsh", "--pr"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0
    assert res.stdout.strip() == "4"
