"""Exception hierarchy for the solver package."""


class TibasapError(Exception):
    """Base class for all package errors."""


class DomainViolation(TibasapError, ValueError):
    """A point lies outside the domain of a Bregman generator."""


class DimensionMismatch(TibasapError, ValueError):
    pass


class SumBoundViolation(TibasapError, ValueError):
    """alpha + beta reached 1 while the sum bound is enforced."""


class UnsupportedGenerator(TibasapError, ValueError):
    pass


class SubproblemFailure(TibasapError, RuntimeError):
    pass


class BisectionFailure(SubproblemFailure):
    pass


class BacktrackDivergence(TibasapError, RuntimeError):
    pass


class NonDescent(TibasapError, AssertionError):
    """The objective increased between accepted iterates beyond float slack."""


class MissingHatPoints(TibasapError, ValueError):
    pass


class InvalidModulus(TibasapError, ValueError):
    pass


class MissingOracle(TibasapError, ValueError):
    pass


class BudgetExceeded(TibasapError, ValueError):
    pass
