"""Birefringence laboratory for linear electromagnetic media.

Tools for skewon-free local and linear media: Fresnel quartic surfaces
via the Tamm-Rubilar tensor, factorization of the quartic into a
product of two quadric light cones, Segre-type classification of the
6x6 medium matrix into metaclasses, closed-form optical metrics for the
birefringence-free normal forms, and randomized verification suites.
"""

from .basis import EPS4, J6, PAIR_BASIS
from .errors import (
    AntisymmetryViolation,
    BirelabError,
    DegenerateMetric,
    DependentVectors,
    IllConditioned,
    InvalidParams,
    NotRotationallySymmetric,
    NotSkewonFree,
    PreconditionViolated,
    SingularJacobian,
    SingularMedium,
    UnknownSuite,
    ZeroForm,
)
from .factor import (
    BirefringenceResult,
    QuadricForm,
    canonical_pair,
    factor_quartic,
    gaeta_covariant,
    quadric_irreducible,
)
from .medium import (
    Decomposition,
    MediumTensor,
    decompose,
    from_components,
    hodge_star,
    is_skewon_free,
    pullback,
    to_components,
)
from .metaclasses import (
    CLASS_IDS,
    DInvariants,
    ExclusionReport,
    MetaclassParams,
    ThreePlusOneSplit,
    birefringence_condition_I,
    class_constant,
    cones_closed_form,
    construct_metaclass,
    d_invariants,
    exclusion_evidence,
    three_plus_one_split,
    transform_II,
)
from .quartic import (
    QuarticForm,
    quartic_from_json,
    quartic_to_json,
    restrict_to_plane,
    tamm_rubilar,
    transform_density,
)
from .segre import SegreType, metaclass_of, segre_type
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "AntisymmetryViolation",
    "BirefringenceResult",
    "BirelabError",
    "CLASS_IDS",
    "DInvariants",
    "Decomposition",
    "DegenerateMetric",
    "DependentVectors",
    "EPS4",
    "ExclusionReport",
    "IllConditioned",
    "InvalidParams",
    "J6",
    "MediumTensor",
    "MetaclassParams",
    "NotRotationallySymmetric",
    "NotSkewonFree",
    "PAIR_BASIS",
    "PreconditionViolated",
    "QuadricForm",
    "QuarticForm",
    "SegreType",
    "SingularJacobian",
    "SingularMedium",
    "ThreePlusOneSplit",
    "UnknownSuite",
    "ZeroForm",
    "birefringence_condition_I",
    "canonical_pair",
    "class_constant",
    "cones_closed_form",
    "construct_metaclass",
    "d_invariants",
    "decompose",
    "exclusion_evidence",
    "factor_quartic",
    "from_components",
    "gaeta_covariant",
    "hodge_star",
    "is_skewon_free",
    "metaclass_of",
    "pullback",
    "quadric_irreducible",
    "quartic_from_json",
    "quartic_to_json",
    "restrict_to_plane",
    "run_suite",
    "segre_type",
    "tamm_rubilar",
    "three_plus_one_split",
    "to_components",
    "transform_II",
    "transform_density",
]
