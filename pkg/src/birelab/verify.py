"""Named verification suites driving the package's algebraic properties.

Each suite draws its cases from a counter-based RNG stream (one child
stream per draw), so results do not depend on evaluation order and are
reproducible from (suite, seed, count).
"""

from __future__ import annotations

import numpy as np

from . import factor
from .errors import UnknownSuite
from .medium import MediumTensor, hodge_star, pullback
from .metaclasses import (
    MetaclassParams,
    birefringence_condition_I,
    cones_closed_form,
    construct_metaclass,
    d_invariants,
    exclusion_evidence,
)
from .quartic import restrict_to_plane, tamm_rubilar, transform_density
from .segre import metaclass_of

PAIR_MATCH_TOL = 1e-7


def _rng(seed: int, k: int) -> np.random.Generator:
    return np.random.default_rng([seed, k])


def _random_lorentz(rng) -> np.ndarray:
    R, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    lam = np.concatenate([[rng.uniform(0.5, 2.0)], -rng.uniform(0.5, 2.0, 3)])
    return R @ np.diag(lam) @ R.T


def _away_from_zero(rng, lo=0.3, hi=2.0):
    return rng.uniform(lo, hi) * rng.choice([-1.0, 1.0])


def _canon(A, B, C):
    qa, qb, c = factor.canonical_pair(A, B, C)
    return qa.Q, qb.Q, c


def _pairs_match(res: factor.BirefringenceResult, A, B, C) -> bool:
    ca, cb, cc = _canon(A, B, C)
    fa, fb, fc = _canon(res.gplus, res.gminus, res.C)
    return (np.abs(ca - fa).max() <= PAIR_MATCH_TOL
            and np.abs(cb - fb).max() <= PAIR_MATCH_TOL
            and abs(cc - fc) <= PAIR_MATCH_TOL * max(1.0, abs(cc)))


def draw_params_I(rng) -> MetaclassParams:
    """Class I parameters satisfying the birefringence condition for one i."""
    i = int(rng.integers(1, 4))
    alpha = rng.uniform(-2.0, 2.0, 3)
    beta = rng.uniform(0.3, 2.0, 3)
    i1, i2 = sorted({1, 2, 3} - {i})
    alpha[i2 - 1] = alpha[i1 - 1]
    beta[i2 - 1] = beta[i1 - 1]
    # keep the remaining D away from 2 so the condition holds for one i only
    if abs(beta[i - 1] - beta[i1 - 1]) < 0.05 and abs(alpha[i - 1] - alpha[i1 - 1]) < 0.05:
        beta[i - 1] += 0.5
    return MetaclassParams(alpha=tuple(alpha), beta=tuple(beta))


def draw_params_II(rng) -> MetaclassParams:
    a1 = rng.uniform(-2.0, 2.0)
    b1 = rng.uniform(0.3, 2.0)
    return MetaclassParams(alpha=(a1, a1), beta=(b1, b1))


def draw_params_IV(rng) -> MetaclassParams:
    a1 = rng.uniform(-2.0, 2.0)
    a3 = rng.uniform(-2.0, 2.0)
    b1 = rng.uniform(0.3, 2.0)
    a4 = _away_from_zero(rng)
    while abs(a3 * a3 - a4 * a4) < 0.05:
        a4 = _away_from_zero(rng)
    return MetaclassParams(alpha=(a1, a1, a3, a4), beta=(b1, b1))


def draw_params_excluded(class_id: str, rng) -> MetaclassParams:
    if class_id == "III":
        return MetaclassParams(alpha=(rng.uniform(-2, 2),), beta=(rng.uniform(0.3, 2),))
    if class_id == "V":
        return MetaclassParams(
            alpha=(rng.uniform(-2, 2), rng.uniform(-2, 2), _away_from_zero(rng)),
            beta=(rng.uniform(0.3, 2),))
    if class_id == "VI":
        return MetaclassParams(
            alpha=tuple(rng.uniform(-2, 2, 3)) + (_away_from_zero(rng), _away_from_zero(rng)),
            beta=(rng.uniform(0.3, 2),))
    if class_id == "VII":
        return MetaclassParams(
            alpha=tuple(rng.uniform(-2, 2, 3)) + tuple(_away_from_zero(rng) for _ in range(3)),
            beta=())
    raise UnknownSuite(f"no excluded-class draw for {class_id}")


def draw_params_generic(class_id: str, rng) -> MetaclassParams:
    """Generic valid parameters for any class (for Segre round-trips)."""
    counts = {"I": (3, 3), "II": (2, 2), "III": (1, 1), "IV": (4, 2),
              "V": (3, 1), "VI": (5, 1), "VII": (6, 0)}
    na, nb = counts[class_id]
    alpha = list(rng.uniform(-2.0, 2.0, na))
    # keep the entries that must not vanish away from zero
    nonzero_from = {"IV": 3, "V": 2, "VI": 3, "VII": 3}.get(class_id)
    if nonzero_from is not None:
        for k in range(nonzero_from, na):
            alpha[k] = np.sign(alpha[k] or 1.0) * (abs(alpha[k]) + 0.3)
    beta = tuple(rng.uniform(0.3, 2.0, nb))
    return MetaclassParams(alpha=tuple(alpha), beta=beta)


# ---------------------------------------------------------------------------
# suite bodies: each returns a list of failure descriptions


def suite_example(seed: int, count: int):
    failures = []
    kappa = MediumTensor(np.diag([-1.0, 1.0, 0.0, -1.0, 1.0, 0.0]))
    f = tamm_rubilar(kappa)
    nonzero = {n for n, c in enumerate(f.vec) if abs(c) > 1e-12 * max(f.norm(), 1e-300)}
    from .quartic import MULTI_INDICES
    if nonzero != {MULTI_INDICES.index((0, 1, 2, 3))}:
        failures.append(f"expected only the 0123 coefficient, got slots {sorted(nonzero)}")
    res = factor.factor_quartic(f)
    if res.tag == factor.DOUBLE_LIGHT_CONE:
        failures.append("the example medium must not produce a double light cone")
    return failures


def suite_lightcone(seed: int, count: int):
    failures = []
    for k in range(count):
        rng = _rng(seed, k)
        g = _random_lorentz(rng)
        res = factor.factor_quartic(tamm_rubilar(hodge_star(g)), seed=k)
        if res.tag != factor.SINGLE_CONE or res.residual > 1e-8:
            failures.append(f"draw {k}: tag {res.tag}, residual {res.residual:.2e}")
            continue
        ginv = np.linalg.inv(g)
        corr = abs(np.tensordot(res.gplus.Q, ginv)) / (
            np.linalg.norm(res.gplus.Q) * np.linalg.norm(ginv))
        if corr < 1.0 - 1e-7:
            failures.append(f"draw {k}: cone not proportional to g inverse ({corr:.9f})")
    return failures


def _roundtrip(class_id: str, draw, seed: int, count: int):
    failures = []
    for k in range(count):
        rng = _rng(seed, k)
        params = draw(rng)
        f = tamm_rubilar(construct_metaclass(class_id, params))
        res = factor.factor_quartic(f, seed=k)
        if res.tag != factor.DOUBLE_LIGHT_CONE:
            failures.append(f"draw {k}: tag {res.tag}")
            continue
        if not (res.gplus.is_lorentz and res.gminus.is_lorentz):
            failures.append(f"draw {k}: non-Lorentz factor signatures "
                            f"{res.gplus.signature}, {res.gminus.signature}")
            continue
        A, B, C = cones_closed_form(class_id, params)
        if not _pairs_match(res, A, B, C):
            failures.append(f"draw {k}: canonical pair mismatch")
            continue
        if class_id == "I":
            d0 = d_invariants("I", params).d0
            if abs(d0) > 1e-9:
                failures.append(f"draw {k}: D0 = {d0:.3e} nonzero")
    return failures


def suite_roundtrip_I(seed, count):
    return _roundtrip("I", draw_params_I, seed, count)


def suite_roundtrip_II(seed, count):
    return _roundtrip("II", draw_params_II, seed, count)


def suite_roundtrip_IV(seed, count):
    return _roundtrip("IV", draw_params_IV, seed, count)


def _exclusion(class_id: str, seed: int, count: int):
    failures = []
    for k in range(count):
        rng = _rng(seed, k)
        rep = exclusion_evidence(class_id, draw_params_excluded(class_id, rng), seed=k)
        if rep.tag == factor.DOUBLE_LIGHT_CONE:
            failures.append(f"draw {k}: unexpectedly factored into a double light cone")
        if class_id == "VI" and any(lor for (_, _, _, lor) in rep.candidates):
            failures.append(f"draw {k}: a candidate diagonal factor has Lorentz signature")
    return failures


def suite_segre(seed: int, count: int):
    """metaclass_of(construct_metaclass(k)) == k, stable under pullbacks."""
    failures = []
    class_ids = ("I", "II", "III", "IV", "V", "VI", "VII")
    for k in range(count):
        rng = _rng(seed, k)
        cid = class_ids[k % len(class_ids)]
        params = draw_params_generic(cid, rng)
        kappa = construct_metaclass(cid, params)
        got = metaclass_of(kappa)
        if got != cid:
            failures.append(f"draw {k}: class {cid} labelled {got}")
            continue
        for j in range(10):
            T = np.eye(4) + 0.4 * rng.normal(size=(4, 4))
            if np.linalg.cond(T) > 50.0:
                continue
            got = metaclass_of(pullback(kappa, T))
            if got != cid:
                failures.append(f"draw {k}, pullback {j}: class {cid} labelled {got}")
                break
    return failures


def suite_covariance(seed: int, count: int):
    failures = []
    for k in range(count):
        rng = _rng(seed, k)
        kappa = MediumTensor(rng.normal(size=(6, 6)))
        T = np.eye(4) + 0.4 * rng.normal(size=(4, 4))
        if np.linalg.cond(T) > 50.0:
            T = np.eye(4) + 0.1 * rng.normal(size=(4, 4))
        f1 = transform_density(tamm_rubilar(kappa), T)
        f2 = tamm_rubilar(pullback(kappa, T))
        err = np.abs(f1.vec - f2.vec).max() / max(f2.norm(), 1e-300)
        if err > 1e-9:
            failures.append(f"draw {k}: covariance violated at {err:.2e}")
    return failures


def suite_adjugate_gaeta(seed: int, count: int):
    """adj Q = 0 exactly when the Gaeta covariant vanishes identically."""
    failures = []
    for k in range(count):
        rng = _rng(seed, k)
        rank = 1 + k % 4
        V = rng.normal(size=(4, rank))
        lam = np.array([_away_from_zero(rng, 0.5, 2.0) for _ in range(rank)])
        Q = (V * lam) @ V.T
        irreducible = factor.quadric_irreducible(Q, tol=1e-9)
        worst = 0.0
        for _ in range(20):
            xi, eta, zeta = rng.normal(size=(3, 4))
            worst = max(worst, abs(factor.gaeta_covariant(Q, xi, eta, zeta)))
        gaeta_vanishes = worst <= 1e-9 * np.linalg.norm(Q) ** 3
        if irreducible == gaeta_vanishes:
            failures.append(f"draw {k} (rank {rank}): adjugate says "
                            f"irreducible={irreducible}, gaeta max {worst:.2e}")
    return failures


def suite_two_plane(seed: int, count: int):
    """Double light cones contain no 2-plane (coordinate or random)."""
    failures = []
    draws = {"I": draw_params_I, "II": draw_params_II, "IV": draw_params_IV}
    class_ids = tuple(draws)
    basis = np.eye(4)
    coord_planes = [(basis[i], basis[j]) for i in range(4) for j in range(i + 1, 4)]
    for k in range(count):
        rng = _rng(seed, k)
        cid = class_ids[k % 3]
        f = tamm_rubilar(construct_metaclass(cid, draws[cid](rng)))
        res = factor.factor_quartic(f, seed=k)
        if res.tag != factor.DOUBLE_LIGHT_CONE:
            failures.append(f"draw {k}: tag {res.tag}")
            continue
        planes = coord_planes + [tuple(rng.normal(size=(2, 4))) for _ in range(100)]
        scale = max(f.norm(), 1e-300)
        for n, (u, v) in enumerate(planes):
            coeffs = restrict_to_plane(f, u, v)
            norm4 = (np.linalg.norm(u) + np.linalg.norm(v)) ** 4
            if np.abs(coeffs).max() <= 1e-10 * scale * norm4:
                failures.append(f"draw {k}: plane {n} lies inside the Fresnel surface")
                break
    return failures


def suite_cone_merge(seed: int, count: int):
    """Canonicalized |g+ - g-| decreases monotonically as beta_1 grows."""
    gaps = []
    for b1 in (1.0, 2.0, 4.0, 8.0, 16.0):
        A, B, C = cones_closed_form("II", MetaclassParams((0.0, 0.0), (b1, b1)))
        ca, cb, _ = _canon(A, B, C)
        gaps.append(np.linalg.norm(ca - cb))
    failures = []
    for a, b in zip(gaps, gaps[1:]):
        if not b < a:
            failures.append(f"gap sequence not strictly decreasing: {gaps}")
            break
    return failures


_SUITES = {
    "example": (1, suite_example),
    "lightcone": (100, suite_lightcone),
    "metaclass-I-roundtrip": (500, suite_roundtrip_I),
    "metaclass-II-roundtrip": (500, suite_roundtrip_II),
    "metaclass-IV-roundtrip": (500, suite_roundtrip_IV),
    "exclusion-III": (500, lambda s, c: _exclusion("III", s, c)),
    "exclusion-V": (500, lambda s, c: _exclusion("V", s, c)),
    "exclusion-VI": (500, lambda s, c: _exclusion("VI", s, c)),
    "exclusion-VII": (500, lambda s, c: _exclusion("VII", s, c)),
    "segre": (700, suite_segre),
    "covariance": (200, suite_covariance),
    "adjugate-gaeta": (500, suite_adjugate_gaeta),
    "two-plane": (30, suite_two_plane),
    "cone-merge": (1, suite_cone_merge),
}


def suite_names() -> tuple:
    return tuple(_SUITES)


def run_suite(name: str, seed: int = 0, count: int | None = None) -> dict:
    if name not in _SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(_SUITES)}")
    default_count, fn = _SUITES[name]
    n = default_count if count is None else count
    failures = fn(seed, n)
    return {
        "suite": name,
        "seed": seed,
        "count": n,
        "passed": n - len(failures),
        "failed": len(failures),
        "failures": failures[:10],
    }
