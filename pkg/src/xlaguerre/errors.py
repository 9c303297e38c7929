"""Exception hierarchy.

``DomainError`` covers argument-domain violations (it subclasses
``ValueError`` so casual callers can catch it the usual way).  The numeric
errors signal that a computation could not meet its accuracy contract and
carry enough context to diagnose why.
"""


class XLaguerreError(Exception):
    """Base class for all package errors."""


class DomainError(XLaguerreError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericError(XLaguerreError, ArithmeticError):
    """A numeric routine failed to converge or produced a non-finite value."""


class SingularCoefficientError(NumericError):
    """A solved recursion variant was requested where its pivot coefficient
    vanishes identically."""


class SingularMatrixError(NumericError):
    """The moment matrix is singular at working precision (insufficient
    precision or an inconsistent moment table)."""


class DegenerateInnerProductError(NumericError):
    """Gram-Schmidt hit a zero norm; impossible for a positive weight."""


class CoverageError(XLaguerreError, LookupError):
    """A moment table does not cover a required (i, j) index pair."""

    def __init__(self, i, j, imax, jmax):
        self.i, self.j = i, j
        self.imax, self.jmax = imax, jmax
        super().__init__(
            f"moment (i={i}, j={j}) not covered by table "
            f"(have 0..{imax} x 0..{jmax})"
        )
