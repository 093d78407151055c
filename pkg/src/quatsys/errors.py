"""Exception types shared across the package."""


class QuatError(Exception):
    """Base class for every error raised by quatsys."""


class ShapeError(QuatError, ValueError):
    """Operands have incompatible shapes."""


class SingularMatrixError(QuatError, ZeroDivisionError):
    """A matrix (or scalar) that must be invertible is singular."""


class PreconditionError(QuatError, ValueError):
    """An input violates a structural precondition (Hermitian, normal, ...)."""


class NotHermitianError(PreconditionError):
    pass


class NotNormalError(PreconditionError):
    pass


class EnumerationCapError(PreconditionError):
    """Matrix order exceeds the permutation enumeration cap."""


class ExactnessError(PreconditionError):
    """The exact backend cannot represent the requested result (e.g. an irrational square root)."""


class NonRealRootError(QuatError, ArithmeticError):
    """A polynomial expected to have only real roots does not."""


class DependentVectorsError(PreconditionError):
    """Gram-Schmidt received right-linearly dependent input."""


class InconsistencyError(QuatError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class ParseError(QuatError, ValueError):
    """Malformed quaternion literal or input document."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
