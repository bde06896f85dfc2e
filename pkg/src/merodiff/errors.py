"""Exception hierarchy.

The CLI maps :class:`InputError` subclasses to exit status 2 and
:class:`PrecisionError` subclasses to exit status 3.
"""

from __future__ import annotations


class MeroDiffError(Exception):
    """Base class for all library errors."""


class InputError(MeroDiffError, ValueError):
    """A precondition on the inputs of an operation does not hold."""


class PrecisionError(MeroDiffError, ArithmeticError):
    """A numeric result could not be certified at the requested precision."""


# exact_core
class PoleEvaluation(InputError, ZeroDivisionError):
    pass


class BadFactorization(InputError):
    pass


# strata
class BadSignature(InputError):
    def __init__(self, message: str, total: int | None = None):
        super().__init__(message)
        self.total = total


class DegenerateConfig(InputError):
    pass


class NotCanonical(InputError):
    pass


# periods
class PathThroughSingularity(InputError):
    pass


class ToleranceNotMet(PrecisionError):
    pass


# torus
class ZeroCoordinate(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class PrecisionTooLow(PrecisionError):
    pass


class RankUnstable(PrecisionError):
    pass


# varieties
class ZeroQ(InputError):
    pass


class NonRationalCoefficient(InputError):
    pass


class NotSimplePole(InputError):
    pass


class NonRationalResidueRatios(InputError):
    pass


class NonRealPeriods(InputError):
    pass


class UnmarkedBranchValue(InputError):
    pass


class ConstantMap(InputError):
    pass
