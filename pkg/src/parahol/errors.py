"""Exception types shared across the package."""


class ParaholError(Exception):
    """Base class for all package errors."""


class MismatchedAlgebraError(ParaholError):
    """Two elements of different algebras were combined."""


class GradeRangeError(ParaholError):
    """A grade index outside [-k, k] was requested."""


class StructureError(ParaholError):
    """An algebra failed a structural invariant (Jacobi, grading, nondegeneracy...)."""


class InvalidScaleError(ParaholError):
    """A grade-0 element is not a valid scale element.

    `component` holds the grade index on which the element fails to act
    by a scalar (or 0 when it fails centrality in the grade-0 part).
    """

    def __init__(self, message, component=None):
        super().__init__(message)
        self.component = component


class DomainError(ParaholError):
    """An argument lies outside the operation's domain."""


class UnsupportedDepthError(ParaholError):
    """The grading depth k of the algebra is not supported by this operation."""


class NoRealizationError(ParaholError):
    """The algebra has no registered matrix realization."""


class NonSingularPointError(ParaholError):
    """Holonomy extraction was requested at a point where the field does not vanish.

    The automorphism is locally inessential near such a point, so no
    classifier run is needed; callers should use the shortcut verdict.
    """


class ChartEscapeError(ParaholError):
    """A numeric flow left the affine chart before the requested time."""

    def __init__(self, message, escape_time=None):
        super().__init__(message)
        self.escape_time = escape_time


class WeylSectionInapplicableError(ParaholError):
    """The Weyl-section commutation check requires holonomy conjugate into grade 0."""


class OracleRefusedError(ParaholError):
    """The brute-force oracle refuses instances it cannot search exhaustively."""
