"""Frozen index conventions for 2-forms on R^4.

Everything downstream keys off the ordered pair basis

    O = {01, 02, 03, 23, 31, 12}

for antisymmetric 2-forms, and off the Levi-Civita permutation sign.
The ordering (note 31, not 13) silently fixes every sign in the
package, so it lives here and nowhere else.
"""

from __future__ import annotations

import itertools

import numpy as np

# Ordered index-pair basis for 2-forms; position in this tuple is the
# 0-based matrix index.
PAIR_BASIS: tuple[tuple[int, int], ...] = (
    (0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2),
)

# (i, j) -> (slot, sign) for every ordered pair with i != j, where
# sign accounts for dx^i ^ dx^j = sign * dx^PAIR_BASIS[slot].
PAIR_SLOT: dict[tuple[int, int], tuple[int, int]] = {}
for _slot, (_a, _b) in enumerate(PAIR_BASIS):
    PAIR_SLOT[(_a, _b)] = (_slot, 1)
    PAIR_SLOT[(_b, _a)] = (_slot, -1)


def levi_civita_sign(indices) -> int:
    """Sign of the permutation `indices` of (0, ..., n-1); 0 on repeats."""
    idx = list(indices)
    n = len(idx)
    if sorted(idx) != list(range(n)):
        return 0
    sign = 1
    for i in range(n):
        while idx[i] != i:
            j = idx[i]
            idx[i], idx[j] = idx[j], idx[i]
            sign = -sign
    return sign


def _eps4() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        eps[perm] = levi_civita_sign(perm)
    return eps


# Levi-Civita symbol as a dense array, for contraction kernels only.
EPS4: np.ndarray = _eps4()
EPS4.setflags(write=False)

# Wedge pairing u ^ v on 2-forms in the PAIR_BASIS ordering:
# dx^I ^ dx^J = J6[I, J] * (volume form).
J6: np.ndarray = np.zeros((6, 6))
for _i, _I in enumerate(PAIR_BASIS):
    for _j, _J in enumerate(PAIR_BASIS):
        J6[_i, _j] = levi_civita_sign(_I + _J)
J6.setflags(write=False)
