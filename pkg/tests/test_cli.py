from __future__ import annotations

import json

import pytest

from excepta import screening
from excepta.cli import main, parse_args


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_orbit_e6_omega4(capsys):
    code, out, _ = run(capsys, "orbit", "--type", "E", "--rank", "6", "--weight", "0,0,0,1,0,0", "--enumerate")
    doc = json.loads(out)
    assert code == 0 and doc["orbit_size"] == 720 and doc["enumerated_size"] == 720


def test_fused_type_token(capsys):
    code, out, _ = run(capsys, "orbit", "--type", "A4", "--weight", "0,1,0,1")
    assert code == 0 and json.loads(out)["orbit_size"] == 30


def test_screen_f4_omega3_p3(capsys):
    code, out, _ = run(capsys, "screen", "--type", "F", "--rank", "4", "--p", "3", "--weight", "0,0,1,0")
    doc = json.loads(out)
    assert code == 0
    assert doc["screening"]["r_p_value"] == {"num": 51, "den": 1}
    assert doc["verdict"]["kind"] == "NotExceptional"


def test_screen_e6_p2_is_not_refused(capsys):
    code, out, _ = run(capsys, "screen", "--type", "E", "--rank", "6", "--p", "2", "--weight", "0,0,1,0,0,0")
    doc = json.loads(out)
    assert code == 0 and doc["screening"] is not None
    assert "SPECIAL_PRIME_REFUSED" not in doc["verdict"]["reasons"]


def test_screen_with_hints_file(capsys, tmp_path):
    path = tmp_path / "hints.json"
    path.write_text(json.dumps({"version": 1, "entries": [
        {"type": "G", "rank": 2, "p": 7, "lambda": [1, 1], "mu": [1, 0], "mult": 2}
    ]}))
    code, out, _ = run(
        capsys, "screen", "--type", "G2", "--p", "7", "--weight", "1,1", "--hints", str(path), "--no-short-circuit"
    )
    assert code == 0 and json.loads(out)["screening"]["r_p_value"] == {"num": 15, "den": 1}


def test_rootinfo(capsys):
    code, out, _ = run(capsys, "rootinfo", "--type", "G", "--rank", "2")
    doc = json.loads(out)
    assert code == 0 and doc["limit"] == 36 and doc["weyl_order"] == 12


def test_sweep_g2_json(capsys):
    code, out, _ = run(capsys, "sweep", "--type", "G", "--rank", "2", "--p", "5")
    doc = json.loads(out)
    assert code == 0 and doc["total_weights"] == 25 and doc["summary"]["statuses"]["CONFLICT"] == 0


@pytest.mark.parametrize("fmt,first", [("csv", "lambda,kind"), ("text", "CONFLICT: 0")])
def test_sweep_other_formats(capsys, fmt, first):
    code, out, _ = run(capsys, "sweep", "--type", "A2", "--p", "3", "--format", fmt)
    assert code == 0 and out.startswith(first)


def test_sweep_conflict_exit_code(capsys, tmp_path):
    # a table that omits every G2 module turns the adjoint verdict into a conflict
    path = tmp_path / "refs.json"
    path.write_text(json.dumps({"version": 1, "sections": [{"family": "G", "p": "any"}], "rows": []}))
    code, out, _ = run(capsys, "sweep", "--type", "G2", "--p", "5", "--refs", str(path))
    assert code == 1 and json.loads(out)["summary"]["statuses"]["CONFLICT"] > 0


def test_integrity_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(screening, "dimension_criterion", lambda rs, lam, p: True)
    code, out, err = run(capsys, "screen", "--type", "E6", "--p", "5", "--weight", "0,0,1,0,0,0")
    assert code == 3 and out == "" and "integrity" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["orbit", "--type", "E", "--rank", "6", "--weight", "0,1"],
        ["orbit", "--type", "E", "--weight", "1,0,0,0,0,0"],
        ["orbit", "--type", "E6", "--rank", "7", "--weight", "1,0,0,0,0,0"],
        ["orbit", "--type", "Q", "--rank", "2", "--weight", "1,0"],
        ["orbit", "--type", "A2", "--weight", "-1,0"],
        ["sweep", "--type", "G2", "--p", "5", "--bogus"],
        ["sweep", "--type", "G2", "--p", "5", "--jobs", "0"],
        ["sweep", "--type", "G2", "--p", "3"],
        ["screen", "--type", "A2", "--p", "4", "--weight", "1,0"],
        ["frobnicate"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out == ""


def test_caps_from_environment(monkeypatch):
    monkeypatch.setenv("EXCEPTA_ORBIT_CAP", "17")
    monkeypatch.setenv("EXCEPTA_GAP_CAP", "99")
    config, _ = parse_args(["orbit", "--type", "A3", "--weight", "1,0,0"])
    assert (config.orbit_cap, config.gap_cap) == (17, 99)
    config, _ = parse_args(["orbit", "--type", "A3", "--weight", "1,0,0", "--orbit-cap", "5"])
    assert config.orbit_cap == 5


def test_orbit_cap_enforced(capsys, monkeypatch):
    monkeypatch.setenv("EXCEPTA_ORBIT_CAP", "10")
    code, out, err = run(capsys, "orbit", "--type", "E6", "--weight", "1,0,0,0,0,0", "--enumerate")
    assert code == 2 and "cap" in err


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--type", "B", "--rank", "3", "--p", "5")
    doc = json.loads(out)
    assert code == 0 and doc["orbit_mismatches"] == [] and doc["brute_force_M"] == doc["table_M"]


def test_verify_subset(capsys, monkeypatch):
    from excepta import DynkinType, sweep

    monkeypatch.setattr(sweep, "ACCEPTANCE_GRID", ((DynkinType("G", 2), 5), (DynkinType("A", 2), 3)))
    code, out, _ = run(capsys, "verify")
    doc = json.loads(out)
    assert code == 0 and doc["conflicts"] == 0 and len(doc["grids"]) == 2
