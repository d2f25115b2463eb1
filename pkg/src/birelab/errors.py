"""Exception types shared across birelab modules."""


class BirelabError(Exception):
    """Base class for all birelab errors."""


class AntisymmetryViolation(BirelabError):
    """Raw 4-index components break the required antisymmetries."""


class DegenerateMetric(BirelabError):
    """Metric determinant too close to zero to build a Hodge map."""


class SingularJacobian(BirelabError):
    """Coordinate-change matrix is not invertible at tolerance."""


class DependentVectors(BirelabError):
    """Plane restriction was given linearly dependent spanning vectors."""


class ZeroForm(BirelabError):
    """Operation requires a nonzero form."""


class IllConditioned(BirelabError):
    """Eigenvalue clustering is ambiguous; classification refused."""


class NotSkewonFree(BirelabError):
    """Medium has a skewon component beyond tolerance."""


class SingularMedium(BirelabError):
    """Medium matrix is not invertible at tolerance."""


class InvalidParams(BirelabError):
    """Normal-form parameters violate a class constraint."""


class PreconditionViolated(BirelabError):
    """A named closed-form precondition does not hold."""


class NotRotationallySymmetric(BirelabError):
    """Quartic lacks the rotational symmetry required by the projection."""


class UnknownSuite(BirelabError):
    """Verification suite name is not registered."""
