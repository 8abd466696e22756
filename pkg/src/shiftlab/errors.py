"""Exception hierarchy for shiftlab."""


class ShiftlabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ShiftlabError, ValueError):
    """A parameter lies outside the domain where the construction is defined."""


class UnboundedWeightsError(DomainError):
    """The requested weight sequence does not define a bounded operator."""


class ExactnessError(ShiftlabError, TypeError):
    """Exact arithmetic was requested from a floating-only sequence."""


class StructuralError(ShiftlabError, ValueError):
    """A matrix does not have the structure of a weighted shift truncation."""


class RangeError(ShiftlabError, ValueError):
    """A computation left its valid range (overflow, truncation leakage)."""


class DegenerateFitError(ShiftlabError, ValueError):
    """The 2-isometry fit is undefined for the given weights.

    Raised when ``a_1 == 1`` but some later weight differs from 1: for a
    2-isometric shift one unit weight forces every weight to be 1.
    """
