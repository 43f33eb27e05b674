"""Exception hierarchy shared by the pipelines and the command line."""

from __future__ import annotations


class ClusterVolError(Exception):
    """Base class for all package errors."""


class InvalidInput(ClusterVolError, ValueError):
    """Malformed or out-of-range user input."""


class BadSymbol(InvalidInput):
    """A monodromy word contains a character other than R or L."""


class NonHyperbolic(InvalidInput):
    """The requested manifold has no complete hyperbolic structure."""


class WrongFamily(InvalidInput):
    """The oriented double-twist path was requested outside its family."""


class DegenerateError(ClusterVolError, ArithmeticError):
    """A flip produced a zero, infinite or undefined entry."""


class NoGeometricSolution(ClusterVolError):
    """No root of the boundary equations puts every tetrahedron in the upper half plane."""


class InconsistentPattern(ClusterVolError):
    """The solved pattern violates an identity it must satisfy.

    Parameters
    ----------
    message : str
        Description of the failed condition.
    k : int, optional
        One-based tetrahedron (flip) index at which the failure was detected.
    """

    def __init__(self, message: str, k: int | None = None):
        self.k = k
        if k is not None:
            message = f"{message} (at k={k})"
        super().__init__(message)


class EpsCaseConflict(InconsistentPattern):
    """Neither sign case of the initial coefficients satisfies the top condition."""
