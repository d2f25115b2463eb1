"""Factor a Fresnel quartic into two quadric light-cone factors.

The decision procedure: sample real points on the quartic's zero set
along random affine lines, use the gradient (or, at double roots, the
rank-1 Hessian direction) to pin down candidate quadric factors by
linear least squares, then polish candidate pairs with a damped
Gauss-Newton solve on the 35 coefficient residuals.  A factorization is
accepted only when the residual on a fixed unisolvent evaluation grid
is below tolerance, so the result is self-verifying.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import least_squares

from .errors import ZeroForm
from .quartic import MULTI_INDICES, QuarticForm, evaluate

DOUBLE_LIGHT_CONE = "DoubleLightCone"
SINGLE_CONE = "SingleCone"
REDUCIBLE_NON_LORENTZ = "ReducibleNonLorentz"
NO_QUADRIC_FACTORIZATION = "NoQuadricFactorization"

#: Acceptance threshold for the relative factorization residual.
RESIDUAL_TOL = 1e-8

#: Eigenvalues below this relative size count as zero in signatures.
SIGNATURE_TOL = 1e-9

# Symmetric 4x4 parametrization: 10 basis matrices E_k.
_SYM_PAIRS: tuple[tuple[int, int], ...] = tuple(
    (a, b) for a in range(4) for b in range(a, 4)
)


def _sym_basis() -> np.ndarray:
    basis = np.zeros((10, 4, 4))
    for k, (a, b) in enumerate(_SYM_PAIRS):
        basis[k, a, b] = 1.0
        basis[k, b, a] = 1.0
    return basis


_E = _sym_basis()
_E.setflags(write=False)


def _vec_to_sym(q: np.ndarray) -> np.ndarray:
    return np.einsum("k,kab->ab", q, _E)


def _sym_to_vec(Q: np.ndarray) -> np.ndarray:
    return np.array([Q[a, b] for a, b in _SYM_PAIRS])


# For each sorted multi-index (i,j,k,l), the three pair splittings
# ((i,j),(k,l)), ((i,k),(j,l)), ((i,l),(j,k)).
_SPLITS = np.array(
    [
        [[(i, j), (k, l)], [(i, k), (j, l)], [(i, l), (j, k)]]
        for (i, j, k, l) in MULTI_INDICES
    ]
)  # shape (35, 3, 2, 2)
_P1 = _SPLITS[:, :, 0, 0]
_P2 = _SPLITS[:, :, 0, 1]
_Q1 = _SPLITS[:, :, 1, 0]
_Q2 = _SPLITS[:, :, 1, 1]


def sym_product_vec(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """35 coefficients of the symmetric tensor of (xi^t A xi)(xi^t B xi)."""
    return (A[_P1, _P2] * B[_Q1, _Q2] + B[_P1, _P2] * A[_Q1, _Q2]).sum(axis=1) / 6.0


def _product_tensor() -> np.ndarray:
    """T with sym_product_vec(A, B) = vec(A) @ T[n] @ vec(B) per slot n."""
    T = np.zeros((35, 10, 10))
    for i in range(10):
        for j in range(10):
            T[:, i, j] = sym_product_vec(_E[i], _E[j])
    return T


# Bilinear form of sym_product_vec over the 10-vector coordinates; lets
# the least-squares residual and Jacobian be single tensor products.
_PT = _product_tensor()
_PT.setflags(write=False)


# Fixed unisolvent grid for the reported residual: 35 points.
_GRID_RNG = np.random.default_rng(20240317)
RESIDUAL_GRID: np.ndarray = _GRID_RNG.normal(size=(35, 4))
RESIDUAL_GRID /= np.linalg.norm(RESIDUAL_GRID, axis=1, keepdims=True)
RESIDUAL_GRID.setflags(write=False)


def adjugate(Q) -> np.ndarray:
    """Cofactor-transpose of a 4x4 matrix: Q @ adj(Q) = det(Q) * Id."""
    Q = np.asarray(Q, dtype=float)
    adj = np.zeros((4, 4))
    idx = list(range(4))
    for i in range(4):
        rows = idx[:i] + idx[i + 1:]
        for j in range(4):
            cols = idx[:j] + idx[j + 1:]
            minor = Q[np.ix_(rows, cols)]
            adj[j, i] = (-1) ** (i + j) * np.linalg.det(minor)
    return adj


def quadric_irreducible(Q, tol: float = 1e-12) -> bool:
    """Adjugate criterion: xi^t Q xi is irreducible over C iff adj(Q) != 0."""
    Q = np.asarray(Q, dtype=float)
    nq = np.linalg.norm(Q)
    if nq == 0.0:
        raise ZeroForm("irreducibility is undefined for the zero quadric")
    return float(np.linalg.norm(adjugate(Q))) > tol * nq**3


def gaeta_covariant(Q, xi, eta, zeta) -> float:
    """Covariant whose identical vanishing marks reducible/multiple quadrics.

    Equals -1/2 times the determinant of the 3x3 matrix of values and
    directional derivatives of f(x) = x^t Q x at the three arguments.
    """
    Q = np.asarray(Q, dtype=float)
    xi, eta, zeta = (np.asarray(v, dtype=float) for v in (xi, eta, zeta))
    m = np.array(
        [
            [2 * xi @ Q @ xi, 2 * xi @ Q @ eta, 2 * xi @ Q @ zeta],
            [2 * xi @ Q @ eta, 2 * eta @ Q @ eta, 2 * eta @ Q @ zeta],
            [2 * xi @ Q @ zeta, 2 * eta @ Q @ zeta, 2 * zeta @ Q @ zeta],
        ]
    )
    return -0.5 * float(np.linalg.det(m))


@dataclass(frozen=True)
class QuadricForm:
    """Symmetric 4x4 quadric with cached eigenvalue signature."""

    Q: np.ndarray
    signature: tuple[int, int, int]

    @classmethod
    def from_matrix(cls, Q, tol: float = SIGNATURE_TOL) -> "QuadricForm":
        Q = np.asarray(Q, dtype=float)
        Q = 0.5 * (Q + Q.T)
        Q.setflags(write=False)
        eig = np.linalg.eigvalsh(Q)
        cut = tol * max(np.abs(eig).max(), 1e-300)
        n_pos = int((eig > cut).sum())
        n_neg = int((eig < -cut).sum())
        return cls(Q, (n_pos, n_neg, 4 - n_pos - n_neg))

    @property
    def is_lorentz(self) -> bool:
        return self.signature in ((1, 3, 0), (3, 1, 0))

    def __call__(self, xi) -> float:
        xi = np.asarray(xi, dtype=float)
        return float(xi @ self.Q @ xi)


@dataclass(frozen=True)
class BirefringenceResult:
    """Outcome of the quadric factorization of a Fresnel quartic."""

    tag: str
    gplus: Optional[QuadricForm] = None
    gminus: Optional[QuadricForm] = None
    C: Optional[float] = None
    residual: float = float("inf")

    def to_json(self) -> dict:
        out = {"tag": self.tag}
        if self.gplus is not None:
            out["g_plus"] = self.gplus.Q.tolist()
        if self.gminus is not None:
            out["g_minus"] = self.gminus.Q.tolist()
        if self.C is not None:
            out["C"] = self.C
        if np.isfinite(self.residual):
            out["residual"] = self.residual
        return out


def _surface_points(fv: np.ndarray, rng: np.random.Generator,
                    n_lines: int = 48, max_points: int = 72):
    """Real zero-set points of the quartic with their cone normals.

    Each point comes with the direction of Q @ u for its quadric factor:
    the gradient at simple roots, the dominant Hessian eigenvector at
    double roots (where the gradient vanishes, e.g. on a squared factor).
    """
    form = QuarticForm(fv)
    arr = form.tensor()
    nodes = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
    vand = np.vander(nodes, 5)  # columns t^4 .. t^0
    points, normals = [], []
    for _ in range(n_lines):
        p = rng.normal(size=4)
        d = rng.normal(size=4)
        vals = np.array([np.einsum("ijkl,i,j,k,l->", arr, *(4 * [p + t * d])) for t in nodes])
        coeff = np.linalg.solve(vand, vals)
        if abs(coeff[0]) < 1e-9:
            continue
        roots = np.roots(coeff)
        dcoeff = np.polyder(coeff)
        for r in roots:
            if abs(r.imag) > 1e-5 * (1 + abs(r)):
                continue
            t = r.real
            # Polish: Newton on p at simple roots; a double root of p is a
            # simple root of p', which recovers full precision there.
            for _ in range(3):
                pv, dv = np.polyval(coeff, t), np.polyval(dcoeff, t)
                if abs(dv) < 1e-4:
                    break
                t -= pv / dv
            if abs(np.polyval(dcoeff, t)) < 1e-4:
                for _ in range(20):
                    dv = np.polyval(dcoeff, t)
                    ddv = np.polyval(np.polyder(dcoeff), t)
                    if ddv == 0.0:
                        break
                    step = dv / ddv
                    t -= step
                    if abs(step) < 1e-14 * (1 + abs(t)):
                        break
            u = p + t * d
            nu = np.linalg.norm(u)
            if nu < 1e-9:
                continue
            u = u / nu
            if abs(np.einsum("ijkl,i,j,k,l->", arr, u, u, u, u)) > 1e-8:
                continue  # root polishing failed; skip
            if any(min(np.abs(u - v).max(), np.abs(u + v).max()) < 1e-6 for v in points):
                continue  # double roots of a squared factor collapse to one point
            w = 4.0 * np.einsum("ijkl,j,k,l->i", arr, u, u, u)
            nw = np.linalg.norm(w)
            if nw > 1e-6:
                normals.append(w / nw)
            else:
                hess = 12.0 * np.einsum("ijkl,k,l->ij", arr, u, u)
                heig, hvec = np.linalg.eigh(hess)
                k = int(np.abs(heig).argmax())
                if abs(heig[k]) < 1e-8:
                    continue
                normals.append(hvec[:, k])
            points.append(u)
            if len(points) >= max_points:
                return points, normals
    return points, normals


def _point_rows(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Six linear conditions on quadric coefficients q enforcing Q u || w."""
    P = np.einsum("kab,b->ak", _E, u)  # (4, 10); column k = E_k @ u
    rows = []
    for i in range(4):
        for j in range(i + 1, 4):
            rows.append(P[i] * w[j] - P[j] * w[i])
    return np.array(rows)


def _inlier_count(Q: np.ndarray, points, normals) -> int:
    """Points whose cone constraints (vanishing and normal direction) Q satisfies.

    A small mixed sample can still admit a spurious null vector, so
    candidates must be vetted against the whole point set.
    """
    nq = np.linalg.norm(Q)
    count = 0
    for u, w in zip(points, normals):
        if abs(u @ Q @ u) > 1e-6 * nq:
            continue
        qu = Q @ u
        if np.abs(np.outer(qu, w) - np.outer(w, qu)).max() > 1e-6 * nq:
            continue
        count += 1
    return count


def _candidate_quadrics(points, normals, rng, n_samples: int = 120):
    """Quadrics consistent with 4-tuples of same-cone surface points.

    Triples are not enough: their 9 independent constraints can leave a
    2-dimensional null space even for same-cone points, and the SVD null
    vector is then a useless mixture.  A fourth point makes same-cone
    samples generically unique while mixed samples have no null vector
    at all.
    """
    n = len(points)
    if n < 4:
        return []
    cands = []
    samples = [tuple(rng.choice(n, size=4, replace=False)) for _ in range(n_samples)]
    min_inliers = max(4, n // 8)
    for sample in samples:
        m = np.vstack([_point_rows(points[t], normals[t]) for t in sample])
        _, s, vt = np.linalg.svd(m)
        if s[-1] > 1e-7 * s[0] or s[-2] < 30 * max(s[-1], 1e-300):
            continue
        Q = _vec_to_sym(vt[-1])
        Q /= np.abs(Q).max()
        if any(abs(np.tensordot(Q, C) / (np.linalg.norm(Q) * np.linalg.norm(C))) > 0.999
               for C in cands):
            continue
        inliers = [k for k in range(n) if _inlier_count(Q, points[k:k + 1], normals[k:k + 1])]
        if len(inliers) < min_inliers:
            continue
        # Refit from every inlier for accuracy before dedup keeps a copy.
        m_all = np.vstack([_point_rows(points[k], normals[k]) for k in inliers])
        _, _, vt_all = np.linalg.svd(m_all)
        Q = _vec_to_sym(vt_all[-1])
        Q /= np.abs(Q).max()
        cands.append(Q)
        if len(cands) >= 4:
            break
    return cands


def _refine(fv: np.ndarray, A0: np.ndarray, B0: np.ndarray):
    """Polish a factor pair by least squares on the 35 coefficient residuals."""
    def resid(x):
        return np.einsum("nij,i,j->n", _PT, x[:10], x[10:]) - fv

    def jac(x):
        ja = np.einsum("nij,j->ni", _PT, x[10:])
        jb = np.einsum("nij,i->nj", _PT, x[:10])
        return np.hstack([ja, jb])

    x0 = np.concatenate([_sym_to_vec(A0), _sym_to_vec(B0)])
    sol = least_squares(resid, x0, jac=jac, method="lm", xtol=1e-15, ftol=1e-15,
                        gtol=1e-15, max_nfev=400)
    A, B = _vec_to_sym(sol.x[:10]), _vec_to_sym(sol.x[10:])
    res = float(np.abs(resid(sol.x)).max())
    return A, B, res


def _refine_square(fv: np.ndarray, q0: np.ndarray, sign: float):
    """Constrained fit fv = sign * sym(q (x) q) for perfect-square detection.

    A squared factor q**2 can be split as (q+d)(q-d) with d up to about
    sqrt(tolerance) without hurting the product residual, so near-equal
    factor pairs are re-fit with the square structure imposed.
    """
    def resid(x):
        return sign * np.einsum("nij,i,j->n", _PT, x, x) - fv

    def jac(x):
        return sign * 2.0 * np.einsum("nij,j->ni", _PT, x)

    sol = least_squares(resid, _sym_to_vec(q0), jac=jac, method="lm",
                        xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200)
    Q = _vec_to_sym(sol.x)
    return Q, float(np.abs(resid(sol.x)).max())


def _grid_residual(f: QuarticForm, A: np.ndarray, B: np.ndarray, C: float) -> float:
    scale = max(f.norm(), 1e-300)
    worst = 0.0
    for p in RESIDUAL_GRID:
        worst = max(worst, abs(evaluate(f, p) - C * (p @ A @ p) * (p @ B @ p)))
    return worst / scale


def _normalize_quadric(Q: np.ndarray) -> tuple[np.ndarray, float]:
    """Scale so a leading entry is +1; return (Q', scale) with Q = scale * Q'.

    The pivot is the smallest index among the (near-tied, within 1e-6
    relative) largest-magnitude entries.  Choosing by position keeps the
    result stable under round-off among exactly tied entries and maps Q
    and -Q to the same representative, which the pair gauge (joint sign
    flips absorbed by the scalar factor) requires.
    """
    flat = Q.reshape(-1)
    mags = np.abs(flat)
    m = mags.max()
    k = int(np.flatnonzero(mags >= (1.0 - 1e-6) * m)[0])
    s = flat[k]
    return Q / s, float(s)


def canonical_pair(gplus: QuadricForm, gminus: QuadricForm, C: float):
    """Gauge-fix a double-cone pair: unit leading entries, stable order.

    Ordering by the first significantly different entry (rather than a
    plain lexicographic sort) keeps the order independent of round-off
    in entries that are equal up to noise.
    """
    A, sa = _normalize_quadric(gplus.Q)
    B, sb = _normalize_quadric(gminus.Q)
    C = C * sa * sb
    diff = (A - B).reshape(-1)
    idx = np.flatnonzero(np.abs(diff) > 1e-6)
    if idx.size and diff[idx[0]] > 0:
        A, B = B, A
    return QuadricForm.from_matrix(A), QuadricForm.from_matrix(B), C


def factor_quartic(f: QuarticForm, seed: int = 0,
                   n_random_starts: int = 8) -> BirefringenceResult:
    """Decide whether f = C * (xi^t A xi)(xi^t B xi) and classify the factors."""
    scale = f.norm()
    if scale == 0.0:
        raise ZeroForm("cannot factor the zero quartic")
    fv = f.vec / scale

    rng = np.random.default_rng(seed + 7919)
    best = None

    points, normals = _surface_points(fv, rng)
    for A0 in _candidate_quadrics(points, normals, rng):
        # B enters the coefficients linearly once A is fixed.
        design = np.einsum("nij,i->nj", _PT, _sym_to_vec(A0))
        b, *_ = np.linalg.lstsq(design, fv, rcond=None)
        lin_res = np.abs(design @ b - fv).max()
        if lin_res > 1e-3:
            continue
        A, B, res = _refine(fv, A0, _vec_to_sym(b))
        if best is None or res < best[2]:
            best = (A, B, res)
        if res <= RESIDUAL_TOL:
            break

    if best is None or best[2] > RESIDUAL_TOL:
        for _ in range(n_random_starts):
            A0 = _vec_to_sym(rng.normal(size=10))
            B0 = _vec_to_sym(rng.normal(size=10))
            A, B, res = _refine(fv, A0, B0)
            if best is None or res < best[2]:
                best = (A, B, res)
            if res <= RESIDUAL_TOL:
                break

    if best is None or best[2] > RESIDUAL_TOL:
        return BirefringenceResult(tag=NO_QUADRIC_FACTORIZATION,
                                   residual=best[2] if best else float("inf"))

    A, B, _ = best
    An, sa = _normalize_quadric(A)
    Bn, sb = _normalize_quadric(B)
    C = scale * sa * sb
    grid_res = _grid_residual(f, An, Bn, C)
    if grid_res > RESIDUAL_TOL:
        return BirefringenceResult(tag=NO_QUADRIC_FACTORIZATION, residual=grid_res)

    # Perfect-square detection: the factors of C * q**2 come out parallel
    # up to noise of order sqrt(residual), so near-parallel pairs are
    # re-fit with the square structure imposed.
    inner = float(np.tensordot(A, B))
    na, nb = np.linalg.norm(A), np.linalg.norm(B)
    if abs(inner) >= (1.0 - 1e-3) * na * nb:
        sign = 1.0 if inner > 0 else -1.0
        q0 = A * np.sqrt(nb / na)
        Q, sq_res = _refine_square(fv, q0, sign)
        if sq_res <= RESIDUAL_TOL:
            qn, s = _normalize_quadric(Q)
            Csq = scale * sign * s * s
            sq_grid = _grid_residual(f, qn, qn, Csq)
            if sq_grid <= RESIDUAL_TOL:
                q = QuadricForm.from_matrix(qn)
                tag = SINGLE_CONE if q.is_lorentz else REDUCIBLE_NON_LORENTZ
                return BirefringenceResult(tag=tag, gplus=q, gminus=q,
                                           C=Csq, residual=sq_grid)

    qa = QuadricForm.from_matrix(An)
    qb = QuadricForm.from_matrix(Bn)
    if qa.is_lorentz and qb.is_lorentz:
        qa, qb, C = canonical_pair(qa, qb, C)
        return BirefringenceResult(tag=DOUBLE_LIGHT_CONE, gplus=qa, gminus=qb,
                                   C=C, residual=grid_res)
    return BirefringenceResult(tag=REDUCIBLE_NON_LORENTZ, gplus=qa, gminus=qb,
                               C=C, residual=grid_res)
