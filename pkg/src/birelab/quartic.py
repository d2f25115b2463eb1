"""Fresnel quartics: the Tamm-Rubilar contraction and quartic-form algebra.

A quartic form is the fully symmetric degree-4 tensor G^{ijkl} on R^4,
stored as its 35 independent coefficients keyed by sorted multi-index.
No multinomial prefactor is baked into the stored coefficients, so they
compare directly with symmetric tensor components; evaluation applies
the multinomial weights.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .basis import EPS4
from .errors import DependentVectors, SingularJacobian
from .medium import MediumTensor, to_components

#: All sorted degree-4 multi-indices over {0,1,2,3}, in lexicographic order.
MULTI_INDICES: tuple[tuple[int, int, int, int], ...] = tuple(
    itertools.combinations_with_replacement(range(4), 4)
)

_INDEX_POS = {mi: n for n, mi in enumerate(MULTI_INDICES)}


def _multinomial(mi) -> int:
    counts = [mi.count(v) for v in set(mi)]
    w = math.factorial(4)
    for c in counts:
        w //= math.factorial(c)
    return w


#: Multinomial weight of each multi-index (4! / product of repetitions).
MULTINOMIAL: np.ndarray = np.array([_multinomial(mi) for mi in MULTI_INDICES], dtype=float)
MULTINOMIAL.setflags(write=False)


@dataclass(frozen=True)
class QuarticForm:
    """Fully symmetric quartic form on R^4 (35 coefficients)."""

    vec: np.ndarray  # coefficients in MULTI_INDICES order

    def __post_init__(self):
        v = np.asarray(self.vec, dtype=float)
        if v.shape != (35,):
            raise ValueError(f"quartic coefficient vector must have length 35, got {v.shape}")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "vec", v)

    @classmethod
    def from_tensor(cls, arr: np.ndarray) -> "QuarticForm":
        """Extract sorted-index coefficients from a symmetric 4-index array."""
        return cls(np.array([arr[mi] for mi in MULTI_INDICES]))

    @classmethod
    def from_coeffs(cls, coeffs: dict) -> "QuarticForm":
        vec = np.zeros(35)
        for mi, c in coeffs.items():
            key = tuple(sorted(int(i) for i in mi))
            vec[_INDEX_POS[key]] = float(c)
        return cls(vec)

    def coeff(self, *mi: int) -> float:
        return float(self.vec[_INDEX_POS[tuple(sorted(mi))]])

    def tensor(self) -> np.ndarray:
        """Full symmetric 4-index array with G[perm(mi)] = coeff(mi)."""
        arr = np.zeros((4, 4, 4, 4))
        for mi, c in zip(MULTI_INDICES, self.vec):
            for perm in set(itertools.permutations(mi)):
                arr[perm] = c
        return arr

    def norm(self) -> float:
        return float(np.abs(self.vec).max())

    def __rmul__(self, c: float) -> "QuarticForm":
        return QuarticForm(float(c) * self.vec)

    def __sub__(self, other: "QuarticForm") -> "QuarticForm":
        return QuarticForm(self.vec - other.vec)


def tamm_rubilar(kappa: MediumTensor) -> QuarticForm:
    """Symmetrized Tamm-Rubilar tensor density of a medium tensor.

    The unsymmetrized density is the 1/48-weighted triple-kappa /
    double-epsilon contraction; symmetrizing over the four free indices
    does not change the quartic polynomial.
    """
    raw = to_components(kappa)
    g0 = np.einsum(
        "pqrs,tiuv,wjxy,rsxk,uvyl,pqtw->ijkl",
        raw, raw, raw, EPS4, EPS4, EPS4,
        optimize=True,
    ) / 48.0
    sym = np.zeros_like(g0)
    for perm in itertools.permutations(range(4)):
        sym += g0.transpose(perm)
    sym /= 24.0
    return QuarticForm.from_tensor(sym)


def evaluate(f: QuarticForm, xi) -> float:
    """Value of the quartic polynomial at covector xi (full index sums)."""
    xi = np.asarray(xi, dtype=float)
    mono = np.array([xi[a] * xi[b] * xi[c] * xi[d] for a, b, c, d in MULTI_INDICES])
    return float(np.dot(MULTINOMIAL * f.vec, mono))


def gradient(f: QuarticForm, xi) -> np.ndarray:
    """Gradient of the quartic polynomial at xi."""
    xi = np.asarray(xi, dtype=float)
    arr = f.tensor()
    return 4.0 * np.einsum("ijkl,j,k,l->i", arr, xi, xi, xi)


def transform_density(f: QuarticForm, T, tol: float = 1e-12) -> QuarticForm:
    """Weight-1 density transformation under Jacobian T = dx~/dx.

    New coefficients pick up four factors of T on the upper indices and
    one factor of det(dx/dx~) = 1/det(T).
    """
    T = np.asarray(T, dtype=float)
    if T.shape != (4, 4):
        raise ValueError("coordinate change must be a 4x4 matrix")
    det = np.linalg.det(T)
    scale = max(np.abs(T).max(), 1e-300) ** 4
    if abs(det) <= tol * scale:
        raise SingularJacobian(f"Jacobian determinant {det:.3e} too small")
    arr = f.tensor()
    new = np.einsum("abcd,ia,jb,kc,ld->ijkl", arr, T, T, T, T) / det
    return QuarticForm.from_tensor(new)


def restrict_to_plane(f: QuarticForm, u, v, tol: float = 1e-10) -> np.ndarray:
    """Coefficients (c0..c4) of the binary quartic f(s*u + t*v).

    Returns c with f(s*u + t*v) = sum_a c[a] s^(4-a) t^a.  All five
    coefficients vanish exactly when span{u, v} lies inside the zero set.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise DependentVectors("spanning vectors must be nonzero")
    gram = np.array([[nu**2, u @ v], [u @ v, nv**2]])
    # det(gram) = (|u||v| sin angle)^2; tol bounds the squared sine
    if np.linalg.det(gram) <= tol * (nu * nv) ** 2:
        raise DependentVectors("spanning vectors are linearly dependent at tolerance")
    arr = f.tensor()
    coeffs = np.zeros(5)
    vecs = {0: u, 1: v}
    for a in range(5):
        # a copies of v, 4-a copies of u; binomial(4, a) orderings
        args = [vecs[0]] * (4 - a) + [vecs[1]] * a
        coeffs[a] = math.comb(4, a) * np.einsum("ijkl,i,j,k,l->", arr, *args)
    return coeffs


def quartic_to_json(f: QuarticForm) -> dict:
    """JSON payload {"quartic": {"0001": c, ...}} of the nonzero coefficients."""
    entries = {}
    for mi, c in zip(MULTI_INDICES, f.vec):
        if c != 0.0:
            entries["".join(str(i) for i in mi)] = c
    return {"quartic": entries}


def quartic_from_json(payload: dict) -> QuarticForm:
    entries = payload["quartic"]
    return QuarticForm.from_coeffs({tuple(int(ch) for ch in k): v for k, v in entries.items()})
