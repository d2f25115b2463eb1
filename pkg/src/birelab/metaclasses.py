"""Normal forms of invertible skewon-free media and their invariants.

Implements the seven pointwise normal-form constructors (metaclasses I
to VII), the D-invariants of their Fresnel quartics, the closed-form
double light cones of classes I, II and IV, the exclusion evidence for
classes III, V, VI and VII, the diagonalizing coordinate change for
class II, and the 3+1 constitutive split.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidParams, PreconditionViolated
from .factor import QuadricForm, factor_quartic
from .medium import MediumTensor, pullback
from .quartic import QuarticForm, tamm_rubilar

#: Metaclass identifiers.
CLASS_IDS = ("I", "II", "III", "IV", "V", "VI", "VII")
VIII_TO_XXIII = "VIII_to_XXIII"

# (number of alphas, number of betas) per class.
_PARAM_COUNTS = {
    "I": (3, 3),
    "II": (2, 2),
    "III": (1, 1),
    "IV": (4, 2),
    "V": (3, 1),
    "VI": (5, 1),
    "VII": (6, 0),
}

#: Default tolerance for the equality preconditions of the closed forms.
PRECONDITION_TOL = 1e-9


@dataclass(frozen=True)
class MetaclassParams:
    """Normal-form parameters: alphas (real) and betas (positive)."""

    alpha: tuple
    beta: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))


def _validate(class_id: str, params: MetaclassParams) -> MetaclassParams:
    if class_id not in _PARAM_COUNTS:
        raise InvalidParams(f"unknown metaclass id {class_id!r}")
    na, nb = _PARAM_COUNTS[class_id]
    if len(params.alpha) != na:
        raise InvalidParams(f"class {class_id} takes {na} alphas, got {len(params.alpha)}")
    if len(params.beta) != nb:
        raise InvalidParams(f"class {class_id} takes {nb} betas, got {len(params.beta)}")
    for k, b in enumerate(params.beta, start=1):
        if not b > 0.0:
            raise InvalidParams(f"class {class_id} requires beta_{k} > 0, got {b}")
    return params


def construct_metaclass(class_id: str, params: MetaclassParams) -> MediumTensor:
    """Exact 6x6 normal-form matrix of the given metaclass."""
    _validate(class_id, params)
    a = params.alpha
    b = params.beta
    if class_id == "I":
        m = [[a[0], 0, 0, -b[0], 0, 0],
             [0, a[1], 0, 0, -b[1], 0],
             [0, 0, a[2], 0, 0, -b[2]],
             [b[0], 0, 0, a[0], 0, 0],
             [0, b[1], 0, 0, a[1], 0],
             [0, 0, b[2], 0, 0, a[2]]]
    elif class_id == "II":
        m = [[a[0], -b[0], 0, 0, 0, 0],
             [b[0], a[0], 0, 0, 0, 0],
             [0, 0, a[1], 0, 0, -b[1]],
             [0, 1, 0, a[0], b[0], 0],
             [1, 0, 0, -b[0], a[0], 0],
             [0, 0, b[1], 0, 0, a[1]]]
    elif class_id == "III":
        m = [[a[0], -b[0], 0, 0, 0, 0],
             [b[0], a[0], 0, 0, 0, 0],
             [1, 0, a[0], 0, 0, -b[0]],
             [0, 0, 0, a[0], b[0], 1],
             [0, 0, 1, -b[0], a[0], 0],
             [0, 1, b[0], 0, 0, a[0]]]
    elif class_id == "IV":
        m = [[a[0], 0, 0, -b[0], 0, 0],
             [0, a[1], 0, 0, -b[1], 0],
             [0, 0, a[2], 0, 0, a[3]],
             [b[0], 0, 0, a[0], 0, 0],
             [0, b[1], 0, 0, a[1], 0],
             [0, 0, a[3], 0, 0, a[2]]]
    elif class_id == "V":
        m = [[a[0], -b[0], 0, 0, 0, 0],
             [b[0], a[0], 0, 0, 0, 0],
             [0, 0, a[1], 0, 0, a[2]],
             [0, 1, 0, a[0], b[0], 0],
             [1, 0, 0, -b[0], a[0], 0],
             [0, 0, a[2], 0, 0, a[1]]]
    elif class_id == "VI":
        m = [[a[0], 0, 0, -b[0], 0, 0],
             [0, a[1], 0, 0, a[3], 0],
             [0, 0, a[2], 0, 0, a[4]],
             [b[0], 0, 0, a[0], 0, 0],
             [0, a[3], 0, 0, a[1], 0],
             [0, 0, a[4], 0, 0, a[2]]]
    else:  # VII
        m = [[a[0], 0, 0, a[3], 0, 0],
             [0, a[1], 0, 0, a[4], 0],
             [0, 0, a[2], 0, 0, a[5]],
             [a[3], 0, 0, a[0], 0, 0],
             [0, a[4], 0, 0, a[1], 0],
             [0, 0, a[5], 0, 0, a[2]]]
    return MediumTensor(np.array(m, dtype=float))


@dataclass(frozen=True)
class DInvariants:
    """Scalar invariants of a normal-form Fresnel quartic."""

    d0: float
    d1: float
    d2: float
    d3: float
    scale: float  # the class constant C


def _other_two(i: int) -> tuple[int, int]:
    rest = sorted({1, 2, 3} - {i})
    return rest[0], rest[1]


def class_constant(class_id: str, params: MetaclassParams) -> float:
    """Normalization constant C of the class Fresnel polynomial."""
    a, b = params.alpha, params.beta
    if class_id == "I":
        return b[0] * b[1] * b[2]
    if class_id == "II":
        return b[0]
    if class_id == "IV":
        return b[0] * b[1] * a[3]
    if class_id == "VI":
        return b[0] * a[3] * a[4]
    if class_id == "VII":
        return a[3] * a[4] * a[5]
    raise InvalidParams(f"class {class_id} has no normalization constant")


def d_invariants(class_id: str, params: MetaclassParams) -> DInvariants:
    """D-invariants of the class Fresnel quartic (classes I, IV, VI, VII).

    D1..D3 follow the per-class parameter formulas where one is printed;
    for class VI they are read off the quartic coefficients.  D0 is
    always recovered from the xi0*xi1*xi2*xi3 coefficient of the actual
    Tamm-Rubilar quartic divided by C, since only its square is
    constrained in closed form; the square relation serves as a
    cross-check where available.
    """
    _validate(class_id, params)
    a, b = params.alpha, params.beta
    if class_id in ("VI", "VII"):
        for k in range(3, len(a)):
            if a[k] == 0.0:
                raise InvalidParams(f"class {class_id} invariants need alpha_{k + 1} != 0")
    if class_id not in ("I", "IV", "VI", "VII"):
        raise InvalidParams(f"class {class_id} has no D-invariants")

    C = class_constant(class_id, params)
    f = tamm_rubilar(construct_metaclass(class_id, params))

    def class_I_d(i: int) -> float:
        i1, i2 = _other_two(i)
        return ((a[i1 - 1] - a[i2 - 1]) ** 2 + b[i1 - 1] ** 2 + b[i2 - 1] ** 2) / (
            b[i1 - 1] * b[i2 - 1])

    if class_id == "I":
        d1, d2, d3 = class_I_d(1), class_I_d(2), class_I_d(3)
        d0 = -24.0 * f.coeff(0, 1, 2, 3) / C
        rhs = 4.0 * (4.0 + d1 * d2 * d3 - d1 * d1 - d2 * d2 - d3 * d3)
        if abs(d0 * d0 - rhs) > 1e-8 * max(1.0, abs(rhs)):
            raise InvalidParams(f"class I D0 cross-check failed: D0^2={d0 * d0:.6e} vs {rhs:.6e}")
    elif class_id == "IV":
        d1 = ((a[1] - a[2]) ** 2 + b[1] ** 2 - a[3] ** 2) / (b[1] * a[3])
        d2 = ((a[0] - a[2]) ** 2 + b[0] ** 2 - a[3] ** 2) / (b[0] * a[3])
        d3 = ((a[0] - a[1]) ** 2 + b[0] ** 2 + b[1] ** 2) / (b[0] * b[1])
        d0 = 24.0 * f.coeff(0, 1, 2, 3) / C
    elif class_id == "VI":
        d1 = 6.0 * f.coeff(2, 2, 3, 3) / C
        d2 = -6.0 * f.coeff(1, 1, 3, 3) / C
        d3 = -6.0 * f.coeff(1, 1, 2, 2) / C
        d0 = 24.0 * f.coeff(0, 1, 2, 3) / C
        # Each D appears at two slots of the display; they must agree.
        for val, mi in ((d1, (0, 0, 1, 1)), (d2, (0, 0, 2, 2)), (d3, (0, 0, 3, 3))):
            dual = -6.0 * f.coeff(*mi) / C
            if abs(val - dual) > 1e-8 * max(1.0, abs(val)):
                raise InvalidParams(f"class VI invariant mismatch at slot {mi}")
    else:  # VII
        d1 = ((a[1] - a[2]) ** 2 - a[4] ** 2 - a[5] ** 2) / (a[4] * a[5])
        d2 = ((a[0] - a[2]) ** 2 - a[3] ** 2 - a[5] ** 2) / (a[3] * a[5])
        d3 = ((a[0] - a[1]) ** 2 - a[3] ** 2 - a[4] ** 2) / (a[3] * a[4])
        d0 = 24.0 * f.coeff(0, 1, 2, 3) / C
        rhs = 4.0 * (-4.0 + d1 * d2 * d3 + d1 * d1 + d2 * d2 + d3 * d3)
        if abs(d0 * d0 - rhs) > 1e-8 * max(1.0, abs(rhs)):
            raise InvalidParams(f"class VII D0 cross-check failed: D0^2={d0 * d0:.6e} vs {rhs:.6e}")
    return DInvariants(d0=d0, d1=d1, d2=d2, d3=d3, scale=C)


def birefringence_condition_I(params: MetaclassParams,
                              tol: float = PRECONDITION_TOL) -> Optional[int]:
    """The unique i with D_i = 2 and D_i' = D_i'', or None.

    None means either all three conditions hold (single light cone) or
    none does.
    """
    di = d_invariants("I", _validate("I", params))
    d = {1: di.d1, 2: di.d2, 3: di.d3}
    hits = []
    for i in (1, 2, 3):
        i1, i2 = _other_two(i)
        if abs(d[i] - 2.0) <= tol and abs(d[i1] - d[i2]) <= tol * max(1.0, abs(d[i1])):
            hits.append(i)
    if len(hits) == 1:
        return hits[0]
    return None


def cones_closed_form(class_id: str, params: MetaclassParams,
                      tol: float = PRECONDITION_TOL):
    """Closed-form quadric factors (A, B, C) for classes I, II, IV.

    The returned matrices are the quadric factors of the Fresnel
    quartic, i.e. the inverses of the light-cone metrics; both carry
    Lorentz signature and C * (xi'A xi)(xi'B xi) equals the quartic.
    """
    _validate(class_id, params)
    a, b = params.alpha, params.beta
    if class_id == "I":
        if birefringence_condition_I(params, tol=tol) is None:
            raise PreconditionViolated(
                "class I closed form needs exactly one i with D_i = 2 and D_i' = D_i''")
        di = d_invariants(class_id, params)
        dvals = (di.d1, di.d2, di.d3)
        diag_p = [1.0] + [0.5 * (-dk + np.sqrt(max(dk * dk - 4.0, 0.0))) for dk in dvals]
        diag_m = [1.0] + [0.5 * (-dk - np.sqrt(max(dk * dk - 4.0, 0.0))) for dk in dvals]
        A, B = np.diag(diag_p), np.diag(diag_m)
        C = class_constant(class_id, params)
    elif class_id == "II":
        scale = max(abs(a[0]), abs(a[1]), b[0], b[1])
        if abs(a[0] - a[1]) > tol * max(1.0, scale):
            raise PreconditionViolated("class II closed form needs alpha_1 = alpha_2")
        if abs(b[0] - b[1]) > tol * max(1.0, scale):
            raise PreconditionViolated("class II closed form needs beta_1 = beta_2")
        b1 = b[0]
        A = np.array([[1.0, 0, 0, b1], [0, -b1, 0, 0], [0, 0, -b1, 0], [b1, 0, 0, 0]])
        B = A.copy()
        B[0, 0] = -1.0
        C = class_constant(class_id, params)
    elif class_id == "IV":
        scale = max(max(abs(x) for x in a), b[0], b[1])
        if abs(a[0] - a[1]) > tol * max(1.0, scale):
            raise PreconditionViolated("class IV closed form needs alpha_1 = alpha_2")
        if abs(b[0] - b[1]) > tol * max(1.0, scale):
            raise PreconditionViolated("class IV closed form needs beta_1 = beta_2")
        if abs(a[3]) <= tol * max(1.0, scale):
            raise PreconditionViolated("class IV closed form needs alpha_4 != 0")
        if abs(a[2] ** 2 - a[3] ** 2) <= tol * max(1.0, scale ** 2):
            raise PreconditionViolated("class IV closed form needs alpha_3^2 != alpha_4^2")
        d1 = ((a[1] - a[2]) ** 2 + b[1] ** 2 - a[3] ** 2) / (b[1] * a[3])
        root = np.sqrt(d1 * d1 + 4.0)
        A = np.diag([1.0, 0.5 * (-d1 + root), 0.5 * (-d1 + root), -1.0])
        B = np.diag([1.0, 0.5 * (-d1 - root), 0.5 * (-d1 - root), -1.0])
        C = class_constant(class_id, params)
    else:
        raise PreconditionViolated(f"no closed-form light cones for class {class_id}")
    return QuadricForm.from_matrix(A), QuadricForm.from_matrix(B), float(C)


@dataclass(frozen=True)
class ExclusionReport:
    """Factorization outcome for a class excluded from birefringence."""

    class_id: str
    tag: str
    residual: float
    # class VI only: (sigma, diagonal quadric factor, signature, is_lorentz)
    candidates: tuple = ()


def exclusion_evidence(class_id: str, params: MetaclassParams,
                       seed: int = 0) -> ExclusionReport:
    """Factor the class quartic and record why no double cone appears.

    For class VI the report also evaluates the candidate diagonal
    factors for both sigma values; neither has Lorentz signature.
    """
    _validate(class_id, params)
    if class_id not in ("III", "V", "VI", "VII"):
        raise InvalidParams(f"class {class_id} is not one of the excluded classes")
    a = params.alpha
    if class_id == "V" and a[2] == 0.0:
        raise InvalidParams("class V exclusion assumes alpha_3 != 0")
    if class_id == "VI" and (a[3] == 0.0 or a[4] == 0.0):
        raise InvalidParams("class VI exclusion assumes alpha_4, alpha_5 != 0")
    if class_id == "VII" and 0.0 in (a[3], a[4], a[5]):
        raise InvalidParams("class VII exclusion assumes alpha_4, alpha_5, alpha_6 != 0")

    f = tamm_rubilar(construct_metaclass(class_id, params))
    res = factor_quartic(f, seed=seed)
    candidates = ()
    if class_id == "VI":
        d3 = d_invariants("VI", params).d3
        root = np.sqrt(d3 * d3 + 4.0)
        cand = []
        for sigma in (1.0, -1.0):
            diag = [1.0, -sigma, 0.5 * (sigma * d3 + root), 0.5 * (-d3 - sigma * root)]
            q = QuadricForm.from_matrix(np.diag(diag))
            cand.append((sigma, q, q.signature, q.is_lorentz))
        candidates = tuple(cand)
    return ExclusionReport(class_id=class_id, tag=res.tag,
                           residual=res.residual, candidates=candidates)


def transform_II(beta1: float, alpha1: float = 0.0):
    """Coordinate change diagonalizing the class II plus-cone metric.

    Returns the Jacobian L (new coordinates = L * old) and the pulled
    back medium tensor, which takes the symmetric form
    alpha_1 * Id + (1/w) * M with w = sqrt(1 + 4 beta_1^2).
    """
    if not beta1 > 0.0:
        raise InvalidParams(f"transform_II requires beta_1 > 0, got {beta1}")
    w = np.sqrt(1.0 + 4.0 * beta1 ** 2)
    Linv = np.array([
        [0.0, 0.0, (1.0 - w) / (2.0 * beta1), (1.0 + w) / (2.0 * beta1)],
        [0.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 1.0],
    ])
    L = np.linalg.inv(Linv)
    kappa = construct_metaclass("II", MetaclassParams(alpha=(alpha1, alpha1),
                                                      beta=(beta1, beta1)))
    return L, pullback(kappa, L)


def transformed_II_display(beta1: float, alpha1: float = 0.0) -> np.ndarray:
    """The symmetric-form 6x6 matrix that transform_II should produce."""
    w = np.sqrt(1.0 + 4.0 * beta1 ** 2)
    b = beta1
    M = np.array([
        [0, 0, 0, b * b, 0, 0],
        [0, b, -b, 0, b * (-1.0 + w), -b],
        [0, b, -b, 0, -b, -b * (1.0 + w)],
        [-w * w, 0, 0, 0, 0, 0],
        [0, -b * (1.0 + w), b, 0, b, b],
        [0, b, b * (-1.0 + w), 0, -b, -b],
    ])
    return alpha1 * np.eye(6) + M / w


@dataclass(frozen=True)
class ThreePlusOneSplit:
    """Constitutive blocks of a medium under the E,B -> D,H map."""

    permittivity: np.ndarray
    inverse_permeability: np.ndarray
    magnetoelectric: tuple  # (electric-from-B, magnetic-from-E) blocks


def three_plus_one_split(kappa: MediumTensor) -> ThreePlusOneSplit:
    """Reinterpret the 6x6 blocks as constitutive matrices.

    With the matrix split into 3x3 blocks [[P, Q], [R, S]], the sign
    convention (fixed by the class IV constitutive display and the
    vacuum Hodge map) is: D = (-R) E + S B and H = (-P) E + Q B, so the
    permittivity is -R, the inverse permeability is Q, and the
    magnetoelectric pair is (S, -P).
    """
    m = kappa.mat
    P, Q = m[:3, :3], m[:3, 3:]
    R, S = m[3:, :3], m[3:, 3:]
    return ThreePlusOneSplit(permittivity=-R, inverse_permeability=Q,
                             magnetoelectric=(S, -P))
