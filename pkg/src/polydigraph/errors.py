"""Exception hierarchy.

Every error raised on bad input derives from :class:`ValidationError` so the
command line can map it to a single exit status.
"""


class ValidationError(ValueError):
    """Input data does not describe what it claims to describe."""


class InvalidIncidence(ValidationError):
    pass


class NotALattice(ValidationError):
    """The incidence closure system is not graded (not polytopal)."""


class MalformedLattice(ValidationError):
    pass


class FaceNotFound(ValidationError, KeyError):
    pass


class InvalidOrientation(ValidationError):
    """Edge list is not an orientation of the skeleton."""


class CyclicInput(ValidationError):
    pass


class NotAcyclicUSO(ValidationError):
    pass


# truncation / pyramid / family


class NotSimpleVertex(ValidationError):
    pass


class NotUniqueSink(ValidationError):
    pass


class BadSplit(ValidationError):
    pass


class NotDimensionFour(ValidationError):
    pass


class BoundsViolation(ValidationError):
    pass


# crosspolytopes


class InvalidPairSequence(ValidationError):
    pass


class CyclicOrientation(CyclicInput):
    pass


class LimitExceeded(ValidationError):
    pass


# geometry


class InfeasiblePoint(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NotGeneric(ValidationError):
    pass


class NotInterior(ValidationError):
    pass


class NotAdjacentFacets(ValidationError):
    pass


class DegenerateAfterRetries(RuntimeError):
    pass
