"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (the input was rejected)
and :class:`InvariantViolation` (a mathematical guarantee failed, which means a
bug).  The CLI maps them to exit codes 2 and 3.
"""
from __future__ import annotations


class MatKClassError(Exception):
    """Base class for every error raised by this package."""


class InputError(MatKClassError, ValueError):
    pass


class InvariantViolation(MatKClassError, ArithmeticError):
    pass


# -- exactpoly ---------------------------------------------------------------

class AmbientMismatch(InputError):
    pass


class NotDivisible(InvariantViolation):
    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class ZeroSubstitutionIntoNegativePower(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class NotSymmetric(InputError):
    pass


# -- matroid -----------------------------------------------------------------

class EmptyBases(InputError):
    pass


class ExchangeAxiomViolation(InputError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class RankDeficient(InputError):
    def __init__(self, actual_rank: int, declared_rank: int):
        super().__init__(
            f"matrix has rank {actual_rank}, expected {declared_rank}; "
            "rank-deficient inputs are not supported")
        self.actual_rank = actual_rank
        self.declared_rank = declared_rank


class NotABasis(InputError):
    pass


class ResourceLimit(InputError):
    pass


# -- orbitclass --------------------------------------------------------------

class PolynomialityViolation(InvariantViolation):
    pass


class CrossCheckMismatch(InvariantViolation):
    pass


class DegreeMismatch(InvariantViolation):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"expected degree {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class SchurExpansionFailure(InvariantViolation):
    pass


# -- schubert ----------------------------------------------------------------

class PathDependence(InvariantViolation):
    pass


class SingularBasisMatrix(InvariantViolation):
    pass


class NonLaurentCoefficient(InvariantViolation):
    pass


class DegreeBoundViolation(InputError):
    pass


# -- projclass ---------------------------------------------------------------

class MismatchReport(InvariantViolation):
    def __init__(self, message: str, li=None, via_k=None):
        super().__init__(message)
        self.li = li
        self.via_k = via_k
