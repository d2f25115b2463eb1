"""Isosurface rendering of sampled implicit-surface grids.

Consumes CSV grids with rows (x, y, z, f) on a regular cubic lattice
(the output format of `birelab surface`) and renders the f = isolevel
level set per panel with marching cubes.  One to three panels per
figure; rendering is deterministic for a fixed RenderSpec.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

__version__ = "0.1.0"


class SchemaMismatch(Exception):
    """The CSV does not look like a regular (x, y, z, f) lattice."""


class EmptyIsosurface(UserWarning):
    """The grid never crosses the isolevel; the panel stays blank."""


@dataclass(frozen=True)
class SurfaceGrid:
    """Values of a scalar field on a regular cubic lattice."""

    axis: np.ndarray  # shared 1D coordinate axis, strictly increasing
    values: np.ndarray  # shape (n, n, n), index order (x, y, z)


@dataclass(frozen=True)
class RenderSpec:
    """One figure: 1-3 CSV panels, an isolevel, view angles, output path."""

    inputs: tuple
    output: str
    isolevel: float = 0.0
    elev: float = 18.0
    azim: float = -60.0
    titles: tuple = ()
    dpi: int = 150

    def __post_init__(self):
        if not 1 <= len(self.inputs) <= 3:
            raise ValueError(f"expected 1 to 3 input grids, got {len(self.inputs)}")
        if not np.isfinite(self.isolevel):
            raise ValueError("isolevel must be finite")


def load_grid(path: str) -> SurfaceGrid:
    """Parse a surface CSV into a cubic lattice of field values.

    Accepts the `birelab surface` output: an optional comment header and
    rows x,y,z,f with x varying slowest and z fastest.
    """
    try:
        data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    except ValueError as err:
        raise SchemaMismatch(f"{path}: not a numeric CSV ({err})") from err
    if data.ndim != 2 or data.shape[1] != 4:
        raise SchemaMismatch(f"{path}: expected 4 columns (x, y, z, f), "
                             f"got shape {data.shape}")
    n = round(data.shape[0] ** (1.0 / 3.0))
    if n < 2 or n**3 != data.shape[0]:
        raise SchemaMismatch(f"{path}: {data.shape[0]} rows is not a cube "
                             f"of an integer >= 2")
    axis = np.unique(data[:, 0])
    if axis.size != n:
        raise SchemaMismatch(f"{path}: expected {n} distinct x values, got {axis.size}")
    x, y, z = (data[:, k].reshape(n, n, n) for k in range(3))
    want_x = axis[:, None, None]
    want_y = axis[None, :, None]
    want_z = axis[None, None, :]
    tol = 1e-9 * max(1.0, np.abs(axis).max())
    if (np.abs(x - want_x).max() > tol or np.abs(y - want_y).max() > tol
            or np.abs(z - want_z).max() > tol):
        raise SchemaMismatch(f"{path}: rows are not a regular lattice in "
                             "(x slow, y, z fast) order")
    return SurfaceGrid(axis=axis, values=data[:, 3].reshape(n, n, n))


def extract_isosurface(grid: SurfaceGrid, isolevel: float):
    """Marching-cubes mesh (vertices in data coordinates, faces) or None."""
    from skimage.measure import marching_cubes

    v = grid.values
    if v.min() >= isolevel or v.max() <= isolevel:
        warnings.warn(f"no crossing of isolevel {isolevel} in the grid",
                      EmptyIsosurface, stacklevel=2)
        return None
    step = grid.axis[1] - grid.axis[0]
    verts, faces, _, _ = marching_cubes(v, level=isolevel,
                                        spacing=(step, step, step))
    verts = verts + grid.axis[0]
    return verts, faces


def render(spec: RenderSpec) -> str:
    """Render the figure described by spec and return the output path."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from mpl_toolkits.mplot3d.art3d import Poly3DCollection

    grids = [load_grid(p) for p in spec.inputs]
    n_panels = len(grids)
    fig = plt.figure(figsize=(4.0 * n_panels, 4.2))
    for k, grid in enumerate(grids):
        ax = fig.add_subplot(1, n_panels, k + 1, projection="3d")
        mesh = extract_isosurface(grid, spec.isolevel)
        if mesh is not None:
            verts, faces = mesh
            poly = Poly3DCollection(verts[faces], alpha=0.55)
            poly.set_facecolor("#3572b0")
            poly.set_edgecolor("none")
            ax.add_collection3d(poly)
        lo, hi = grid.axis[0], grid.axis[-1]
        ax.set_xlim(lo, hi)
        ax.set_ylim(lo, hi)
        ax.set_zlim(lo, hi)
        ax.view_init(elev=spec.elev, azim=spec.azim)
        if k < len(spec.titles):
            ax.set_title(spec.titles[k])
    fig.tight_layout()
    fig.savefig(spec.output, dpi=spec.dpi)
    plt.close(fig)
    return spec.output
