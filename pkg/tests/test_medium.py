"""Medium tensor algebra: pair basis, Hodge map, decomposition, pullback."""

import numpy as np
import pytest

from birelab.basis import J6, PAIR_BASIS, levi_civita_sign
from birelab.errors import AntisymmetryViolation, DegenerateMetric, SingularJacobian
from birelab.medium import (
    MediumTensor,
    decompose,
    from_components,
    hodge_star,
    is_skewon_free,
    pullback,
    to_components,
)

MINKOWSKI = np.diag([-1.0, 1.0, 1.0, 1.0])


def test_pair_basis_covers_all_index_pairs():
    assert len(PAIR_BASIS) == 6
    # the spatial pairs follow the cyclic convention 23, 31, 12
    got = {frozenset(p) for p in PAIR_BASIS}
    want = {frozenset((i, j)) for i in range(4) for j in range(i + 1, 4)}
    assert got == want


def test_levi_civita_sign():
    assert levi_civita_sign((0, 1, 2, 3)) == 1
    assert levi_civita_sign((1, 0, 2, 3)) == -1
    assert levi_civita_sign((0, 0, 2, 3)) == 0


def test_j6_is_the_wedge_pairing():
    # (e_I wedge e_J) picks up the permutation sign of the four indices
    for a, (i, j) in enumerate(PAIR_BASIS):
        for b, (k, l) in enumerate(PAIR_BASIS):
            assert J6[a, b] == levi_civita_sign((i, j, k, l))


def test_medium_tensor_rejects_wrong_shape():
    with pytest.raises(ValueError):
        MediumTensor(np.zeros((4, 4)))


def test_components_roundtrip():
    rng = np.random.default_rng(3)
    kappa = MediumTensor(rng.normal(size=(6, 6)))
    raw = to_components(kappa)
    # antisymmetry in both index pairs
    assert np.abs(raw + raw.transpose(1, 0, 2, 3)).max() == 0.0
    assert np.abs(raw + raw.transpose(0, 1, 3, 2)).max() == 0.0
    back = from_components(raw)
    np.testing.assert_allclose(back.mat, kappa.mat, atol=1e-14)


def test_from_components_rejects_non_antisymmetric():
    raw = np.ones((4, 4, 4, 4))
    with pytest.raises(AntisymmetryViolation):
        from_components(raw)


def test_hodge_star_minkowski_is_skewon_free_with_zero_axion():
    kappa = hodge_star(MINKOWSKI)
    assert is_skewon_free(kappa)
    assert abs(kappa.axion) < 1e-14
    # the Hodge map squares to -Id on 2-forms for Lorentzian signature
    np.testing.assert_allclose(kappa.mat @ kappa.mat, -np.eye(6), atol=1e-12)


def test_hodge_star_rejects_degenerate_metric():
    with pytest.raises(DegenerateMetric):
        hodge_star(np.diag([1.0, 1.0, 1.0, 0.0]))


def test_decompose_parts_sum_back():
    rng = np.random.default_rng(11)
    kappa = MediumTensor(rng.normal(size=(6, 6)))
    dec = decompose(kappa)
    total = dec.principal.mat + dec.skewon.mat + dec.axion * np.eye(6)
    np.testing.assert_allclose(total, kappa.mat, atol=1e-12)
    assert is_skewon_free(dec.principal)
    assert abs(dec.principal.axion) < 1e-12
    s = J6 @ dec.skewon.mat
    np.testing.assert_allclose(s, -s.T, atol=1e-12)


def test_skewon_free_detects_asymmetry():
    kappa = hodge_star(MINKOWSKI)
    assert is_skewon_free(kappa)
    perturbed = MediumTensor(kappa.mat + J6 @ (0.01 * np.diag([1, -1, 0, 0, 0, 0])) @ J6)
    mat = kappa.mat.copy()
    mat[0, 1] += 0.01
    assert not is_skewon_free(MediumTensor(mat))
    del perturbed


def test_pullback_identity_and_composition():
    rng = np.random.default_rng(7)
    kappa = MediumTensor(rng.normal(size=(6, 6)))
    np.testing.assert_allclose(pullback(kappa, np.eye(4)).mat, kappa.mat, atol=1e-14)
    T1 = np.eye(4) + 0.2 * rng.normal(size=(4, 4))
    T2 = np.eye(4) + 0.2 * rng.normal(size=(4, 4))
    lhs = pullback(pullback(kappa, T2), T1)
    rhs = pullback(kappa, T1 @ T2)
    np.testing.assert_allclose(lhs.mat, rhs.mat, atol=1e-10)


def test_pullback_rejects_singular_jacobian():
    kappa = hodge_star(MINKOWSKI)
    with pytest.raises(SingularJacobian):
        pullback(kappa, np.zeros((4, 4)))


def test_pullback_preserves_skewon_free():
    rng = np.random.default_rng(19)
    kappa = hodge_star(MINKOWSKI)
    T = np.eye(4) + 0.3 * rng.normal(size=(4, 4))
    assert is_skewon_free(pullback(kappa, T))
