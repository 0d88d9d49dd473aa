"""Exception hierarchy.

Every error raised on purpose by the library derives from O2PowerError, so
callers (and the CLI) can separate mathematical/usage failures from bugs.
"""


class O2PowerError(Exception):
    pass


class RingSpecError(O2PowerError, ValueError):
    pass


class RingMismatch(O2PowerError, TypeError):
    pass


class InvOfNonUnit(O2PowerError, ZeroDivisionError):
    pass


class ZeroPolynomial(O2PowerError, ValueError):
    pass


class NonMonic(O2PowerError, ValueError):
    pass


class NonMonicDivisor(NonMonic):
    pass


class NotCoprime(O2PowerError, ValueError):
    pass


class ReductionMismatch(O2PowerError, ValueError):
    pass


class NotIrreducible(O2PowerError, ValueError):
    pass


class NotFundamentalIrreducible(NotIrreducible):
    pass


class GcdLpViolation(O2PowerError, ValueError):
    """L shares a factor with the residue characteristic p."""


class PreconditionViolated(O2PowerError, ValueError):
    pass


class DimMismatch(O2PowerError, ValueError):
    pass


class NotInvertible(O2PowerError, ValueError):
    pass


class NotCyclic(O2PowerError, ValueError):
    pass


class NotRegularSemisimple(O2PowerError, ValueError):
    pass


class NotCompatibleCyclic(O2PowerError, ValueError):
    pass


class UnsupportedClass(O2PowerError, ValueError):
    pass


class NotAPower(O2PowerError, ValueError):
    pass


class BadParams(O2PowerError, ValueError):
    pass


class BudgetExceeded(O2PowerError, RuntimeError):
    pass


class MismatchFound(O2PowerError, AssertionError):
    """A decision procedure disagreed with brute force; ``report`` holds the witnesses."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
