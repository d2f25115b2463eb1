"""Renderer tests: CSV schema checks, isosurface extraction, figure panels."""

import json
import subprocess
import sys

import numpy as np
import pytest

from plotviz import (
    EmptyIsosurface,
    RenderSpec,
    SchemaMismatch,
    extract_isosurface,
    load_grid,
    render,
)
from plotviz.cli import main


def write_grid(path, fn, n=16, lo=-2.0, hi=2.0):
    axis = np.linspace(lo, hi, n)
    X, Y, Z = np.meshgrid(axis, axis, axis, indexing="ij")
    vals = fn(X, Y, Z)
    rows = np.column_stack([X.ravel(), Y.ravel(), Z.ravel(), vals.ravel()])
    np.savetxt(path, rows, delimiter=",", header="x,y,z,f", fmt="%.17g")
    return path


def sphere(X, Y, Z):
    return X**2 + Y**2 + Z**2 - 1.0


def test_load_grid_roundtrip(tmp_path):
    path = write_grid(tmp_path / "sphere.csv", sphere, n=8)
    grid = load_grid(str(path))
    assert grid.values.shape == (8, 8, 8)
    assert grid.axis[0] == -2.0 and grid.axis[-1] == 2.0
    # center value is -1 (inside the unit sphere there is no lattice
    # point exactly at the origin for even n, so check a corner instead)
    assert grid.values[0, 0, 0] == pytest.approx(12.0 - 1.0)


def test_schema_mismatch_wrong_columns(tmp_path):
    path = tmp_path / "bad.csv"
    np.savetxt(path, np.zeros((8, 3)), delimiter=",")
    with pytest.raises(SchemaMismatch):
        load_grid(str(path))


def test_schema_mismatch_not_a_cube(tmp_path):
    path = tmp_path / "bad.csv"
    np.savetxt(path, np.zeros((10, 4)), delimiter=",")
    with pytest.raises(SchemaMismatch):
        load_grid(str(path))


def test_schema_mismatch_irregular_lattice(tmp_path):
    path = write_grid(tmp_path / "grid.csv", sphere, n=4)
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    data[5, 0] += 0.5
    np.savetxt(path, data, delimiter=",", header="x,y,z,f")
    with pytest.raises(SchemaMismatch):
        load_grid(str(path))


def test_schema_mismatch_non_numeric(tmp_path):
    path = tmp_path / "text.csv"
    path.write_text("a,b,c,d\n1,2,3,not-a-number\n")
    with pytest.raises(SchemaMismatch):
        load_grid(str(path))


def test_isosurface_vertices_iff_sign_change(tmp_path):
    grid = load_grid(str(write_grid(tmp_path / "sphere.csv", sphere)))
    mesh = extract_isosurface(grid, 0.0)
    assert mesh is not None
    verts, faces = mesh
    assert len(verts) > 0 and len(faces) > 0
    # vertices of the unit sphere lie at radius 1 up to grid resolution
    radii = np.linalg.norm(verts, axis=1)
    assert abs(radii.mean() - 1.0) < 0.05


def test_empty_isosurface_warns(tmp_path):
    grid = load_grid(str(write_grid(tmp_path / "pos.csv",
                                    lambda X, Y, Z: X**2 + Y**2 + Z**2 + 1.0)))
    with pytest.warns(EmptyIsosurface):
        assert extract_isosurface(grid, 0.0) is None


def test_render_three_panels(tmp_path):
    paths = [
        str(write_grid(tmp_path / f"p{k}.csv",
                       lambda X, Y, Z, r=r: X**2 + Y**2 + Z**2 - r**2))
        for k, r in enumerate([0.5, 1.0, 1.5])
    ]
    out = tmp_path / "fig.png"
    spec = RenderSpec(inputs=tuple(paths), output=str(out),
                      titles=("r=0.5", "r=1.0", "r=1.5"))
    assert render(spec) == str(out)
    assert out.stat().st_size > 0


def test_render_is_deterministic(tmp_path):
    path = str(write_grid(tmp_path / "s.csv", sphere, n=12))
    out1, out2 = tmp_path / "a.png", tmp_path / "b.png"
    render(RenderSpec(inputs=(path,), output=str(out1)))
    render(RenderSpec(inputs=(path,), output=str(out2)))
    assert out1.read_bytes() == out2.read_bytes()


def test_render_spec_validation(tmp_path):
    with pytest.raises(ValueError):
        RenderSpec(inputs=(), output="x.png")
    with pytest.raises(ValueError):
        RenderSpec(inputs=("a", "b", "c", "d"), output="x.png")
    with pytest.raises(ValueError):
        RenderSpec(inputs=("a.csv",), output="x.png", isolevel=float("nan"))


def test_cli_render_and_errors(tmp_path, capsys):
    path = str(write_grid(tmp_path / "s.csv", sphere, n=10))
    out = tmp_path / "fig.png"
    assert main(["--in", path, "--out", str(out), "--isolevel", "0"]) == 0
    assert out.exists()
    assert main(["--in", str(tmp_path / "missing.csv"), "--out", str(out)]) == 1
    assert main(["--in", path, path, path, path, "--out", str(out)]) == 1
    capsys.readouterr()


def surface_csv(tmp_path, name, class_id, params, resolution=40):
    """Produce a grid through the primary package's CLI (CSV boundary only)."""
    out = tmp_path / name
    cmd = [sys.executable, "-m", "birelab.cli", "surface",
           "--class", class_id, "--params", json.dumps(params),
           "--resolution", str(resolution), "--out", str(out)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return str(out)


def alpha4_for_d1(d1):
    """Class IV alpha_4 with beta = 1 and alpha_1..3 = 0 realizing D1 = d1."""
    return 0.5 * (-d1 + np.sqrt(d1 * d1 + 4.0))


def test_figure_one_class_II_panels(tmp_path):
    paths = [
        surface_csv(tmp_path, f"ii_{b1}.csv", "II",
                    {"alpha": [0.0, 0.0], "beta": [b1, b1]})
        for b1 in (0.2, 0.8, 5.0)
    ]
    out = tmp_path / "figure1.png"
    assert main(["--in", *paths, "--out", str(out)]) == 0
    for p in paths:
        assert extract_isosurface(load_grid(p), 0.0) is not None


def test_figure_two_class_IV_panels(tmp_path):
    paths = [
        surface_csv(tmp_path, f"iv_{d1}.csv", "IV",
                    {"alpha": [0.0, 0.0, 0.0, alpha4_for_d1(d1)],
                     "beta": [1.0, 1.0]})
        for d1 in (-25.0, 0.0, 25.0)
    ]
    out = tmp_path / "figure2.png"
    assert main(["--in", *paths, "--out", str(out)]) == 0
    for p in paths:
        assert extract_isosurface(load_grid(p), 0.0) is not None
