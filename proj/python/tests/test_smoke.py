import json

import pytest

import hsepy

DIAG = json.dumps({"group": [], "complex": {"shape": "strict", "psi": [[{}, {}], [{}, {"[]": 2}]]}})


def test_parse_and_round_trip():
    inst = hsepy.Instance.from_json(DIAG)
    assert inst.group == []
    assert inst.strict
    assert inst.d == 2
    text = inst.to_json()
    assert hsepy.Instance.from_json(text).to_json() == text


def test_parse_error_is_value_error():
    with pytest.raises(ValueError, match="E_SYNTAX"):
        hsepy.Instance.from_json('{"group": [2], ')


def test_cohomology_and_fitting():
    inst = hsepy.Instance.from_json(DIAG)
    h = hsepy.cohomology(inst)
    assert h["H1"] == {"torsion": [], "free_rank": 1}
    assert h["H2"] == {"torsion": ["2"], "free_rank": 1}
    assert hsepy.fitting_ideal(inst, 1) == ["2"]
    assert hsepy.fitting_ideal(inst, 0) == []


def test_eta_on_diag():
    inst = hsepy.Instance.from_json(DIAG)
    r = hsepy.eta(inst, [0])
    assert r["a"] == 1
    assert r["eta"] == ["2", "0"]
    assert r["I_eta"] == ["2"]


def test_generated_instance_satisfies_fitting_equality():
    inst = hsepy.generate([2, 2], d=3, a=1, seed=4)
    r = hsepy.check_charels(inst)
    assert r["separable"]
    assert r["fit_equality"]
    assert r["ok"]
    assert r["I_eta"] == r["fit"]


def test_run_matches_cli_contract(tmp_path):
    path = tmp_path / "diag.json"
    path.write_text(DIAG)
    code, out, _ = hsepy.run(["eta", "--a", "1", "--x", "b1", str(path)])
    assert code == 0
    assert "eta = 2*b1" in out
    code, _, err = hsepy.run(["cohomology", str(tmp_path / "missing.json")])
    assert code == 2
    assert err
