"""Exception hierarchy shared by every module."""


class DynformsError(Exception):
    """Base class for all package errors."""


class InvalidInputError(DynformsError, ValueError):
    """An argument violates a documented precondition."""


class FieldMismatchError(InvalidInputError, TypeError):
    """Operands live over different fields."""


class DegenerateMapError(InvalidInputError):
    """Numerator and denominator share a root, or the degree is too small."""


class UnsupportedInputError(InvalidInputError):
    """The input lies outside the class an algorithm is able to handle."""


class ResourceCapExceeded(DynformsError):
    """A symbolic expansion grew past the configured monomial cap."""


class TheoremCheckFailure(DynformsError, AssertionError):
    """An identity that must hold mathematically was found to fail.

    Seeing this means the implementation is wrong, never the input.
    """
