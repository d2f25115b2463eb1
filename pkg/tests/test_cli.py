"""Command-line interface: subcommands, JSON formats, exit codes."""

import json

import numpy as np
import pytest

from birelab.cli import main, medium_from_json, surface_grid
from birelab.errors import InvalidParams
from birelab.medium import hodge_star, to_components
from birelab.metaclasses import MetaclassParams, construct_metaclass
from birelab.quartic import evaluate, tamm_rubilar

MINKOWSKI = np.diag([-1.0, 1.0, 1.0, 1.0])


def run(args):
    return main(args)


def test_medium_json_matrix_and_components_agree():
    kappa = hodge_star(MINKOWSKI)
    by_matrix = medium_from_json({"basis": "O-standard", "matrix": kappa.mat.tolist()})
    by_components = medium_from_json({"components": to_components(kappa).tolist()})
    np.testing.assert_allclose(by_matrix.mat, by_components.mat, atol=1e-14)


def test_medium_json_rejects_unknown_basis():
    with pytest.raises(InvalidParams):
        medium_from_json({"basis": "F-dual", "matrix": np.eye(6).tolist()})


def test_medium_json_rejects_bad_shapes():
    with pytest.raises(InvalidParams):
        medium_from_json({"matrix": [[1.0]]})
    with pytest.raises(InvalidParams):
        medium_from_json({"components": [[1.0]]})
    with pytest.raises(InvalidParams):
        medium_from_json({})


def test_construct_then_analyze(tmp_path, capsys):
    medium_file = tmp_path / "medium.json"
    report_file = tmp_path / "report.json"
    params = json.dumps({"alpha": [1.0, 1.0, 2.0], "beta": [1.0, 1.0, 2.0]})
    assert run(["construct", "--class", "I", "--params", params,
                "--out", str(medium_file)]) == 0
    payload = json.loads(medium_file.read_text())
    assert payload["basis"] == "O-standard"
    assert np.asarray(payload["matrix"]).shape == (6, 6)

    assert run(["analyze", "--input", str(medium_file), "--out", str(report_file)]) == 0
    report = json.loads(report_file.read_text())
    assert report["schema"] == "birelab-report/1"
    assert report["skewon_free"] is True
    assert report["metaclass"] == "I"
    assert report["birefringence"]["tag"] == "DoubleLightCone"
    assert report["birefringence"]["residual"] <= 1e-8
    assert np.asarray(report["birefringence"]["g_plus"]).shape == (4, 4)
    assert np.asarray(report["birefringence"]["g_minus"]).shape == (4, 4)
    assert "quartic" in report
    assert all(len(k) == 4 for k in report["quartic"])


def test_analyze_reports_d_invariants_for_constructed_media(capsys):
    params = json.dumps({"alpha": [1.0, 1.0, 2.0], "beta": [1.0, 1.0, 2.0]})
    assert run(["analyze", "--class", "I", "--params", params]) == 0
    report = json.loads(capsys.readouterr().out)
    di = report["d_invariants"]
    assert abs(di["D3"] - 2.0) < 1e-12
    assert abs(di["C"] - 2.0) < 1e-12


def test_analyze_of_singular_example_medium(tmp_path, capsys):
    mat = np.diag([-1.0, 1.0, 0.0, -1.0, 1.0, 0.0])
    medium_file = tmp_path / "example.json"
    medium_file.write_text(json.dumps({"basis": "O-standard", "matrix": mat.tolist()}))
    assert run(["analyze", "--input", str(medium_file)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["skewon_free"] is True
    assert report["metaclass"] == "not classified (singular)"
    assert report["birefringence"]["tag"] == "ReducibleNonLorentz"


def test_analyze_is_deterministic(capsys):
    params = json.dumps({"alpha": [0.5, 0.5], "beta": [1.2, 1.2]})
    assert run(["analyze", "--class", "II", "--params", params, "--seed", "9"]) == 0
    first = capsys.readouterr().out
    assert run(["analyze", "--class", "II", "--params", params, "--seed", "9"]) == 0
    assert capsys.readouterr().out == first


def test_error_exit_codes(tmp_path, capsys):
    assert run(["analyze", "--input", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"basis": "weird", "matrix": np.eye(6).tolist()}))
    assert run(["analyze", "--input", str(bad)]) == 1
    notjson = tmp_path / "notjson.json"
    notjson.write_text("{")
    assert run(["analyze", "--input", str(notjson)]) == 1
    # class/params mismatch
    assert run(["analyze", "--class", "I", "--params",
                json.dumps({"class": "II", "alpha": [1, 1, 2], "beta": [1, 1, 2]})]) == 1
    capsys.readouterr()


def test_refusal_exit_code_for_ambiguous_clustering(tmp_path, capsys):
    mat = np.diag([1.0, 1.0 + 5e-6, 2.0, 3.0, 4.0, 5.0])
    f = tmp_path / "near.json"
    f.write_text(json.dumps({"basis": "O-standard", "matrix": mat.tolist()}))
    assert run(["analyze", "--input", str(f)]) == 2
    capsys.readouterr()


def test_env_tol_validation(monkeypatch, capsys):
    monkeypatch.setenv("BIRELAB_TOL", "not-a-float")
    params = json.dumps({"alpha": [0.0, 0.0, 0.0], "beta": [1.0, 1.0, 1.0]})
    assert run(["analyze", "--class", "I", "--params", params]) == 1
    monkeypatch.setenv("BIRELAB_TOL", "1e-6")
    assert run(["analyze", "--class", "I", "--params", params]) == 0
    capsys.readouterr()


def test_surface_grid_values_match_quartic(tmp_path):
    params = MetaclassParams((1.0, 1.0, 2.0), (1.0, 1.0, 2.0))
    f = tamm_rubilar(construct_metaclass("I", params))
    rows = surface_grid(f, (-1.0, 1.0), 5)
    assert rows.shape == (125, 4)
    for x, y, z, val in rows[::17]:
        want = evaluate(f, np.array([x, 0.0, y, z]))
        assert abs(val - want) < 1e-10 * max(1.0, abs(want))


def test_surface_command_writes_csv(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    params = json.dumps({"alpha": [0.5, 0.5], "beta": [0.8, 0.8]})
    assert run(["surface", "--class", "II", "--params", params,
                "--resolution", "8", "--bounds=-2,2", "--out", str(out)]) == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert data.shape == (512, 4)
    assert data[:, 0].min() == -2.0 and data[:, 0].max() == 2.0
    # the quartic changes sign inside the box, so the zero set is sampled
    assert (data[:, 3] > 0).any() and (data[:, 3] < 0).any()
    capsys.readouterr()


def test_surface_rejects_asymmetric_medium_and_bad_flags(capsys):
    asym = json.dumps({"alpha": [0.3, 1.0, 2.0], "beta": [0.5, 1.0, 2.0]})
    assert run(["surface", "--class", "I", "--params", asym, "--resolution", "4"]) == 1
    sym = json.dumps({"alpha": [0.5, 0.5], "beta": [0.8, 0.8]})
    assert run(["surface", "--class", "II", "--params", sym,
                "--projection", "xi2=0"]) == 1
    assert run(["surface", "--class", "II", "--params", sym,
                "--resolution", "1"]) == 1
    assert run(["surface", "--class", "II", "--params", sym,
                "--bounds", "3,-3", "--resolution", "4"]) == 1
    capsys.readouterr()


def test_verify_command_reports_summary(capsys):
    assert run(["verify", "--suite", "covariance", "--seed", "1", "--count", "5"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary == {"suite": "covariance", "seed": 1, "count": 5,
                       "passed": 5, "failed": 0, "failures": []}
    assert run(["verify", "--suite", "no-such-suite"]) == 1
    capsys.readouterr()
