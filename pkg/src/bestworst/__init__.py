"""Exact, asymptotic and simulated solutions of the best-or-worst secretary problem."""

from .errors import DegenerateError, DomainError, SeriesOverflowError
from .payoff import PayoffRule
from .specfun import CONSTANTS

__all__ = ["CONSTANTS", "DegenerateError", "DomainError", "PayoffRule", "SeriesOverflowError"]
__version__ = "0.1.0"
