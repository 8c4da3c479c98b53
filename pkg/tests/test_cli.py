"""Command line behaviour: exit codes, JSON shape, determinism."""

import io
import json
import subprocess
import sys

import pytest

from goeritz.cli import main
from goeritz.diagram import parse_diagram, validate_diagram


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def trefoil_file(tmp_path):
    p = tmp_path / "trefoil.pd"
    p.write_text("piece K { X 1 4 2 5 ; X 3 6 4 1 ; X 5 2 6 3 }\n")
    return str(p)


def test_validate_ok(trefoil_file):
    code, out = run("validate", trefoil_file)
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_validate_genus_one(tmp_path):
    p = tmp_path / "bad.pd"
    p.write_text("piece K { X 4 1 2 5 ; X 3 6 4 1 ; X 5 2 6 3 }\n")
    code, out = run("validate", str(p))
    assert code == 1
    assert json.loads(out)["errors"][0]["code"] == "GENUS_NONZERO"


def test_validate_syntax_error(tmp_path):
    p = tmp_path / "bad.pd"
    p.write_text("piece K { X 1 2 }\n")
    code, out = run("validate", str(p), "--text")
    assert code == 1
    assert out.startswith("SYNTAX")


def test_validate_missing_file():
    assert run("validate", "/nonexistent/file.pd")[0] == 2


def test_usage_errors():
    assert run()[0] == 2
    assert run("invariants", "trefoil", "--group", "Q")[0] == 2
    assert run("invariants", "trefoil", "--shading", "99:0")[0] == 2
    assert run("verify", "--mod-range", "5..2", "trefoil")[0] == 2
    assert run("verify")[0] == 2
    assert run("examples", "--emit", "nope")[0] == 2


def test_invariant_on_invalid_diagram_is_domain_failure(tmp_path):
    p = tmp_path / "bad.pd"
    p.write_text("piece K { X 4 1 2 5 ; X 3 6 4 1 ; X 5 2 6 3 }\n")
    assert run("invariants", str(p))[0] == 1


def test_invariants_torus():
    code, out = run("invariants", "torus-2-8")
    data = json.loads(out)
    assert code == 0
    assert data["goeritz"]["matrix"] == [[-8, 8], [8, -8]]
    assert data["beta"] == 1
    assert data["snf_diag"] == [8, 0]


def test_invariants_whitehead():
    data = json.loads(run("invariants", "whitehead")[1])
    assert data["goeritz"]["matrix"] == [[-3, 1, 2], [1, -3, 2], [2, 2, -4]]


def test_invariants_unlink_group():
    data = json.loads(run("invariants", "unlink-3", "--group", "Z/5")[1])
    assert data["fox_group"] == {"invariant_factors": [5, 5, 5], "free_rank": 0}


def test_invariants_counts_and_cap_note():
    data = json.loads(run("invariants", "torus-2-8", "--mod", "3", "8")[1])
    assert data["counts"]["3"]["fox"] == data["counts"]["3"]["fox_enumerated"] == 3
    assert "fox_enumerated" not in data["counts"]["8"]
    assert data["notes"]


def test_invariants_explicit_shading():
    a = json.loads(run("invariants", "trefoil", "--shading", "u:1")[1])
    b = json.loads(run("invariants", "trefoil")[1])
    assert a["goeritz"]["matrix"] != b["goeritz"]["matrix"]
    assert a["fox_group"] == b["fox_group"]


def test_goeritz_text():
    code, out = run("goeritz", "torus-2-8", "--text")
    assert code == 0
    assert "-8    8" in out


def test_goeritz_eta_flipped():
    data = json.loads(run("goeritz", "torus-2-8", "--eta-flipped")[1])
    assert data["matrix"] == [[8, -8], [-8, 8]]


def test_verify_all_examples_pass():
    code, out = run("verify", "--all-examples", "--mod-range", "2..4")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["failed"] == 0
    assert any(r["check"] == "golden_goeritz" for r in data["results"])


def test_verify_corrupted_calibration_fails():
    code, out = run("verify", "--all-examples", "--mod-range", "2..3", "--eta-flipped")
    data = json.loads(out)
    assert code == 1
    failed = {(r["diagram"], r["check"]) for r in data["results"] if not r["ok"]}
    assert failed == {("torus-2-8", "golden_goeritz"), ("whitehead", "golden_goeritz")}


def test_verify_free_loop():
    code, out = run("verify", "unknot-0x", "--text")
    assert code == 0
    assert "FAIL" not in out


def test_examples_list():
    code, out = run("examples", "--list")
    assert code == 0
    assert len(out.strip().splitlines()) >= 9


def test_emit_round_trips():
    for name in ["trefoil", "torus-2-8", "trefoil-in-trefoil"]:
        code, out = run("examples", "--emit", name)
        assert code == 0
        assert validate_diagram(parse_diagram(out)).ok


def test_emit_then_invariants(tmp_path):
    p = tmp_path / "t.pd"
    p.write_text(run("examples", "--emit", "torus-2-8")[1])
    data = json.loads(run("invariants", str(p))[1])
    assert data["goeritz"]["matrix"] == [[-8, 8], [8, -8]]


def test_output_is_byte_deterministic():
    argv = [sys.executable, "-m", "goeritz", "verify", "--all-examples", "--mod-range", "2..3"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
