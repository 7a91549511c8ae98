"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class SeriesOverflowError(OverflowError):
    """A series result would exceed the double-precision range."""


class DegenerateError(ArithmeticError):
    """A ratio cannot be formed because its denominator vanishes numerically."""
