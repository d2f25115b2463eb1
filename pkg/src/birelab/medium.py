"""Medium tensors: representation, skewon/axion split, Hodge map, pullback.

A linear electromagnetic medium at a point is an antisymmetric
(2,2)-tensor kappa, stored as the 6x6 matrix of its action on 2-forms
in the pair basis of :mod:`birelab.basis`.  Column J of the matrix holds
the coefficients of the image of basis 2-form J.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import EPS4, J6, PAIR_BASIS, PAIR_SLOT
from .errors import (
    AntisymmetryViolation,
    DegenerateMetric,
    SingularJacobian,
)

#: Default relative tolerance for algebraic identity checks.
ALGEBRA_TOL = 1e-12


@dataclass(frozen=True)
class MediumTensor:
    """6x6 matrix representation of a medium tensor in the pair basis."""

    mat: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=float)
        if m.shape != (6, 6):
            raise ValueError(f"medium matrix must be 6x6, got {m.shape}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def axion(self) -> float:
        return float(np.trace(self.mat)) / 6.0

    def norm(self) -> float:
        return float(np.linalg.norm(self.mat))

    def __add__(self, other: "MediumTensor") -> "MediumTensor":
        return MediumTensor(self.mat + other.mat)

    def __sub__(self, other: "MediumTensor") -> "MediumTensor":
        return MediumTensor(self.mat - other.mat)

    def __rmul__(self, c: float) -> "MediumTensor":
        return MediumTensor(float(c) * self.mat)


@dataclass(frozen=True)
class Decomposition:
    """Principal + skewon + axion * Id split of a medium tensor."""

    principal: MediumTensor
    skewon: MediumTensor
    axion: float


def from_components(raw, tol: float = ALGEBRA_TOL) -> MediumTensor:
    """Build a medium tensor from raw components kappa^{ij}_{lm}.

    `raw[i, j, l, m]` holds kappa^{ij}_{lm}.  Antisymmetry in (i, j) and
    in (l, m) is required up to relative tolerance `tol`; violations
    below tolerance are symmetrized away, larger ones raise
    :class:`AntisymmetryViolation`.
    """
    raw = np.asarray(raw, dtype=float)
    if raw.shape != (4, 4, 4, 4):
        raise ValueError(f"raw components must be 4x4x4x4, got {raw.shape}")
    anti = raw - raw.transpose(1, 0, 2, 3)
    anti = 0.5 * (anti - anti.transpose(0, 1, 3, 2)) / 2.0
    scale = max(np.abs(raw).max(), 1e-300)
    correction = np.abs(anti - raw).max()
    if correction > tol * scale:
        raise AntisymmetryViolation(
            f"antisymmetry violated: relative correction {correction / scale:.3e}"
        )
    mat = np.zeros((6, 6))
    for col, (j1, j2) in enumerate(PAIR_BASIS):
        for row, (i1, i2) in enumerate(PAIR_BASIS):
            mat[row, col] = anti[j1, j2, i1, i2]
    return MediumTensor(mat)


def to_components(kappa: MediumTensor) -> np.ndarray:
    """Raw components kappa^{ij}_{lm} of a medium tensor."""
    raw = np.zeros((4, 4, 4, 4))
    for (i, j), (col, s_up) in PAIR_SLOT.items():
        for (l, m), (row, s_dn) in PAIR_SLOT.items():
            raw[i, j, l, m] = s_up * s_dn * kappa.mat[row, col]
    return raw


def is_skewon_free(kappa: MediumTensor, tol: float = 1e-9) -> bool:
    """True iff kappa is symmetric with respect to the wedge pairing."""
    s = J6 @ kappa.mat
    scale = max(np.linalg.norm(kappa.mat), 1e-300)
    return bool(np.linalg.norm(s - s.T) <= tol * scale)


def decompose(kappa: MediumTensor) -> Decomposition:
    """Split into principal, skewon and axion parts.

    The split symmetrizes J6 * mat: the symmetric trace-adjusted part is
    principal, the antisymmetric part is skewon, and the axion is
    trace(mat) / 6.
    """
    s = J6 @ kappa.mat
    sym = 0.5 * (s + s.T)
    anti = 0.5 * (s - s.T)
    axion = kappa.axion
    principal = J6 @ sym - axion * np.eye(6)
    skewon = J6 @ anti
    return Decomposition(MediumTensor(principal), MediumTensor(skewon), axion)


def hodge_star(g, tol: float = 1e-12) -> MediumTensor:
    """Medium tensor of the Hodge map of a non-degenerate metric g.

    Components: kappa^{ij}_{rs} = sqrt|det g| g^{ia} g^{jb} eps_{abrs}.
    """
    g = np.asarray(g, dtype=float)
    if g.shape != (4, 4):
        raise ValueError("metric must be a 4x4 matrix")
    det = np.linalg.det(g)
    scale = max(np.abs(g).max(), 1e-300) ** 4
    if abs(det) <= tol * scale:
        raise DegenerateMetric(f"metric determinant {det:.3e} too small")
    ginv = np.linalg.inv(g)
    raw = np.sqrt(abs(det)) * np.einsum("ia,jb,abrs->ijrs", ginv, ginv, EPS4)
    return from_components(raw)


def pullback(kappa: MediumTensor, T, tol: float = 1e-12) -> MediumTensor:
    """Components of kappa in new coordinates with Jacobian T = dx~/dx.

    The (2,2) valence transforms with two factors of T on the upper
    indices and two of T^{-1} on the lower ones.
    """
    T = np.asarray(T, dtype=float)
    if T.shape != (4, 4):
        raise ValueError("coordinate change must be a 4x4 matrix")
    det = np.linalg.det(T)
    scale = max(np.abs(T).max(), 1e-300) ** 4
    if abs(det) <= tol * scale:
        raise SingularJacobian(f"Jacobian determinant {det:.3e} too small")
    Tinv = np.linalg.inv(T)
    raw = to_components(kappa)
    new = np.einsum("ia,jb,abcd,cl,dm->ijlm", T, T, raw, Tinv, Tinv)
    return from_components(new)
