"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`CanonicalFormError`, which is itself a :class:`ValueError` so that
callers treating bad input generically keep working.
"""


class CanonicalFormError(ValueError):
    pass


class NotSquaredNormal(CanonicalFormError):
    """The square of the input matrix is not normal at the configured tolerance."""

    def __init__(self, message, defect=None, which=None):
        super().__init__(message)
        self.defect = defect
        self.which = which


class ClusterAmbiguity(CanonicalFormError):
    """Eigenvalues of A^2 cannot be grouped unambiguously."""


class NotInvolution(CanonicalFormError):
    """B^2 differs from sigma * I by more than the tolerance."""


class NotNilpotent(CanonicalFormError):
    """B^2 is not negligible although B came from the zero cluster."""


class MismatchedPair(CanonicalFormError):
    """An (s1)-type block is not the image of the given (s2)-type block."""


class PairingFailure(CanonicalFormError):
    """A non-real block of a real matrix has no complex-conjugate partner."""


class DimensionMismatch(CanonicalFormError):
    pass
