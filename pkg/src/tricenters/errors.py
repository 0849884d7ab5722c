"""Exception types shared across the package."""


class TriCentersError(Exception):
    """Base class for all package errors."""


class NotATriangle(TriCentersError, ValueError):
    """Side lengths violate the strict triangle inequality."""


class DegenerateCenter(TriCentersError, ArithmeticError):
    """A center's barycentric coordinate sum vanishes at the given sides."""


class NoSuchRoot(TriCentersError, ValueError):
    """A root selector matched no real root of the polynomial."""


class ConstantParseError(TriCentersError, ValueError):
    pass


class BudgetExhausted(TriCentersError, RuntimeError):
    """Branch-and-bound ran out of subdivisions before deciding."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class SearchFailed(TriCentersError, RuntimeError):
    pass


class CycleBeyondEquality(TriCentersError, ValueError):
    """A 2-cycle in an inequality graph has no matching equality record."""
