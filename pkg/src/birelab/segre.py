"""Segre type of a medium matrix and the metaclass correspondence.

The Segre type records the Jordan block sizes of the 6x6 medium matrix,
split into blocks for real eigenvalues and for complex-conjugate pairs.
Block sizes are found numerically: eigenvalues are clustered at a
relative tolerance and the sizes follow from the rank filtration of
(M - lambda I)^k.  Near-degenerate inputs where the clustering is
ambiguous are refused rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IllConditioned, NotSkewonFree, SingularMedium
from .medium import MediumTensor, is_skewon_free
from .metaclasses import MetaclassParams, VIII_TO_XXIII, construct_metaclass

#: Relative eigenvalue clustering tolerance.
CLUSTER_TOL = 1e-7

#: Relative singular-value threshold for rank decisions.
RANK_TOL = 1e-8


@dataclass(frozen=True)
class SegreType:
    """Jordan block structure of a real 6x6 matrix.

    real_blocks: tuple of (eigenvalue, sizes) sorted by eigenvalue;
    complex_blocks: tuple of (eigenvalue with positive imaginary part,
    sizes) sorted by (real, imag).  Sizes are descending per eigenvalue.
    """

    real_blocks: tuple
    complex_blocks: tuple

    @property
    def label(self) -> str:
        """Bracket label determined by block sizes only."""
        parts = [str(m) for _, sizes in self.real_blocks for m in sorted(sizes)]
        csizes = sorted((k for _, sizes in self.complex_blocks for k in sizes),
                        reverse=True)
        parts += [f"{k} {k}bar" for k in csizes]
        return "[" + " ".join(parts) + "]"

    def size_signature(self) -> tuple:
        """(sorted real sizes, sorted complex sizes): the eigenvalue-free type."""
        real = tuple(sorted(m for _, sizes in self.real_blocks for m in sizes))
        cplx = tuple(sorted(k for _, sizes in self.complex_blocks for k in sizes))
        return real, cplx


def _cluster(eigs: np.ndarray, gap: float):
    """Connected components of eigenvalues at distance threshold gap."""
    n = len(eigs)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(eigs[i] - eigs[j]) <= gap:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [(np.mean(eigs[idx]), np.array(idx)) for idx in groups.values()]


def _block_sizes(M: np.ndarray, lam: complex, mult: int, rank_tol: float):
    """Jordan block sizes at eigenvalue lam from the rank filtration."""
    n = M.shape[0]
    kernel_dims = [0]
    P = np.eye(n, dtype=complex)
    base = M - lam * np.eye(n)
    while kernel_dims[-1] < mult and len(kernel_dims) <= mult:
        P = P @ base
        s = np.linalg.svd(P, compute_uv=False)
        rank = int(np.sum(s > rank_tol * max(s[0], 1e-300)))
        kernel_dims.append(n - rank)
    # blocks of size >= k count kernel_dims[k] - kernel_dims[k-1]
    sizes = []
    for k in range(1, len(kernel_dims)):
        n_ge_k = kernel_dims[k] - kernel_dims[k - 1]
        n_ge_next = (kernel_dims[k + 1] - kernel_dims[k]) if k + 1 < len(kernel_dims) else 0
        sizes.extend([k] * (n_ge_k - n_ge_next))
    sizes = sorted(sizes, reverse=True)
    if sum(sizes) != mult:
        raise IllConditioned(
            f"rank filtration at eigenvalue {lam:.6g} gives blocks {sizes} "
            f"for multiplicity {mult}")
    return tuple(sizes)


def _geometric_multiplicity(vectors: np.ndarray, tol: float = 2e-3) -> int:
    """Rank of a set of unit eigenvectors.

    Eigenvectors computed for a numerically scattered Jordan block are
    nearly parallel (they all approximate the block's single true
    eigenvector, to within about eps**(1/k)), while the eigenvectors of
    genuinely distinct eigenvalues stay independent, so this rank counts
    Jordan blocks in a cluster and vetoes wrong merges.
    """
    s = np.linalg.svd(vectors, compute_uv=False)
    return int(np.sum(s > tol * s[0]))


def _cluster_blocks(M, eigs, vectors, members, center, mult, rank_tol):
    sizes = _block_sizes(M, center, mult, rank_tol)
    g = _geometric_multiplicity(vectors[:, members])
    if len(sizes) != g:
        raise IllConditioned(
            f"cluster at {center:.6g}: filtration sees {len(sizes)} blocks, "
            f"eigenvectors span {g} directions")
    return sizes


def _blocks_at_gap(M: np.ndarray, eigs: np.ndarray, vectors: np.ndarray,
                   gap: float, rank_tol: float, scale: float):
    """Cluster at the given gap and compute all block sizes, or raise."""
    clusters = _cluster(eigs, gap)
    real_blocks = []
    complex_blocks = []
    for center, members in clusters:
        mult = len(members)
        if abs(center.imag) <= gap:
            real_blocks.append((center.real * scale,
                                _cluster_blocks(M, eigs, vectors, members,
                                                complex(center.real, 0.0), mult,
                                                rank_tol)))
        elif center.imag > 0.0:
            complex_blocks.append((center * scale,
                                   _cluster_blocks(M, eigs, vectors, members,
                                                   center, mult, rank_tol)))
        # the conjugate cluster is implied; skip centers with negative imag
    real_blocks.sort(key=lambda t: t[0])
    complex_blocks.sort(key=lambda t: (t[0].real, t[0].imag))
    total = sum(m for _, s in real_blocks for m in s) + \
        2 * sum(k for _, s in complex_blocks for k in s)
    if total != 6:
        raise IllConditioned(f"block sizes account for dimension {total}, expected 6")
    return SegreType(real_blocks=tuple(real_blocks),
                     complex_blocks=tuple(complex_blocks))


def segre_type(mat, tol: float = CLUSTER_TOL, rank_tol: float = RANK_TOL) -> SegreType:
    """Segre type of a real 6x6 matrix.

    A Jordan block of size k scatters its computed eigenvalue over a
    disc of radius about eps**(1/k), far beyond the base clustering
    tolerance.  The clustering gap therefore escalates from `tol`
    upward, and the coarsest gap whose clusters all pass the rank
    filtration wins: a wrong merge of genuinely distinct eigenvalues
    leaves kernels too small and fails the filtration, while a
    numerically scattered defective eigenvalue passes only once merged.
    """
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (6, 6):
        raise ValueError(f"expected a 6x6 matrix, got {mat.shape}")
    scale = max(np.linalg.norm(mat), 1e-300)
    M = mat / scale
    eigs, vectors = np.linalg.eig(M)

    # For non-normal matrices the singular values of (M - lambda I)^k can
    # be far smaller than any eigenvalue distance, so the filtration
    # cannot veto a merge across genuinely distinct eigenvalues.  Capping
    # the gap at a tenth of the spectral spread keeps such merges from
    # being attempted in the first place.
    spread = max((abs(a - b) for a in eigs for b in eigs), default=0.0)
    cap = max(spread / 10.0, tol)
    gaps = [g for g in (3e-2, 1e-2, 1e-3, 1e-4, 1e-5) if tol <= g <= cap]
    gaps.append(tol)
    last_err = None
    for gap in gaps:
        try:
            st = _blocks_at_gap(M, eigs, vectors, gap, rank_tol, scale)
        except IllConditioned as err:
            last_err = err
            continue
        # Refuse when a pair of accepted clusters is so close that the
        # base tolerance could have merged them differently.
        centers = [complex(c, 0.0) for c, _ in st.real_blocks]
        centers += [c for c, _ in st.complex_blocks]
        centers += [c.conjugate() for c, _ in st.complex_blocks]
        for i in range(len(centers)):
            for j in range(i + 1, len(centers)):
                d = abs(centers[i] - centers[j]) / scale
                if d < 10.0 * tol:
                    raise IllConditioned(
                        f"eigenvalue clusters separated by {d:.3e} relative, "
                        f"within 10x of tolerance {tol:.1e}")
        return st
    raise IllConditioned(f"no consistent Jordan structure found: {last_err}")


def _reference_signatures() -> dict:
    """Size signature -> metaclass id.

    I, II, IV use the types stated in the classification theorem; the
    types of III, V, VI, VII are computed here from the normal-form
    constructors with fixed generic parameters (they are not printed
    anywhere, so computing them avoids transcription mistakes).
    """
    table = {
        ((), (1, 1, 1)): "I",
        ((), (1, 2)): "II",
        ((1, 1), (1, 1)): "IV",
    }
    generic = {
        "III": MetaclassParams(alpha=(0.3,), beta=(0.7,)),
        "V": MetaclassParams(alpha=(0.2, -0.4, 0.9), beta=(0.6,)),
        "VI": MetaclassParams(alpha=(0.1, 0.5, -0.3, 0.8, 1.2), beta=(0.9,)),
        "VII": MetaclassParams(alpha=(0.2, -0.5, 0.3, 1.1, 0.7, -0.9), beta=()),
    }
    for cid, params in generic.items():
        sig = segre_type(construct_metaclass(cid, params).mat).size_signature()
        if sig in table:
            raise IllConditioned(
                f"reference Segre type of class {cid} collides with class {table[sig]}")
        table[sig] = cid
    return table


_SIGNATURE_TABLE = _reference_signatures()


def metaclass_of(kappa: MediumTensor, tol: float = CLUSTER_TOL) -> str:
    """Metaclass id of an invertible skewon-free medium tensor."""
    if not is_skewon_free(kappa):
        raise NotSkewonFree("metaclass labels apply to skewon-free media only")
    s = np.linalg.svd(kappa.mat, compute_uv=False)
    if s[-1] <= 1e-9 * max(s[0], 1e-300):
        raise SingularMedium(
            f"medium matrix is singular at tolerance (smallest sv {s[-1]:.3e})")
    st = segre_type(kappa.mat, tol=tol)
    if any(m >= 2 for _, sizes in st.real_blocks for m in sizes):
        return VIII_TO_XXIII
    sig = st.size_signature()
    if sig not in _SIGNATURE_TABLE:
        raise IllConditioned(f"Segre type {st.label} matches no metaclass")
    return _SIGNATURE_TABLE[sig]
