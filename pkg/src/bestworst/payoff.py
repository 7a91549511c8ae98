"""Known-``n`` game where a success pays according to how many interviews were held.

With cutoff ``r`` the chance of stopping at interview ``k`` on a global
extremum is ``2 C(r,2) / (n C(k-1,2))``, so the expected payoff is
``G(r, n) = (2 C(r,2)/n) sum_{k=r+1}^n g(k, n) / C(k-1, 2)``. Both non-trivial
rules telescope to ``O(1)`` expressions in ``H(n, r) = sum_{i=r}^{n-1} 1/i``:

    seen   (g = k/n):      4r(n-r)/(n^2(n-1)) + 2r(r-1)/n^2 H(n, r)
    unseen (g = (n-k)/n):  2r(r-1)/n^2 [(n-2)/(r-1) - (n-2)/(n-1) - H(n, r)]
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

import numpy as np

from . import fixed_n
from .errors import DomainError
from .fixed_n import OptResult
from .specfun import CONSTANTS, harmonic_prefix, harmonic_range


class PayoffRule(str, enum.Enum):
    INDICATOR = "indicator"
    SEEN_FRACTION = "seen_fraction"
    UNSEEN_FRACTION = "unseen_fraction"

    @classmethod
    def parse(cls, text: "str | PayoffRule") -> "PayoffRule":
        if isinstance(text, cls):
            return text
        aliases = {"seen": cls.SEEN_FRACTION, "unseen": cls.UNSEEN_FRACTION}
        return aliases.get(text) or cls(text)

    def reward(self, k: int, n: int) -> Fraction:
        """Payoff for a success at interview ``k`` (1-based) out of ``n``."""
        if self is PayoffRule.INDICATOR:
            return Fraction(1)
        if self is PayoffRule.SEEN_FRACTION:
            return Fraction(k, n)
        return Fraction(n - k, n)


def _check(n: int, r: int) -> None:
    if n < 3:
        raise DomainError(f"payoff rules need n >= 3, got {n}")
    if not 2 <= r <= n - 1:
        raise DomainError(f"payoff closed forms need 2 <= r <= n-1, got r={r}, n={n}")


def expected_payoff(n: int, r: int, rule: PayoffRule | str) -> float:
    rule = PayoffRule.parse(rule)
    if rule is PayoffRule.INDICATOR:
        return fixed_n.success_prob(n, r)
    _check(n, r)
    h = harmonic_range(r, n)
    scale = 2.0 * r * (r - 1) / (n * n)
    if rule is PayoffRule.SEEN_FRACTION:
        return 4.0 * r * (n - r) / (n * n * (n - 1)) + scale * h
    return scale * ((n - 2) / (r - 1) - (n - 2) / (n - 1) - h)


def expected_payoff_exact(n: int, r: int, rule: PayoffRule | str) -> Fraction:
    """Closed forms above in rational arithmetic."""
    rule = PayoffRule.parse(rule)
    if rule is PayoffRule.INDICATOR:
        return fixed_n.success_prob_exact(n, r)
    _check(n, r)
    h = sum((Fraction(1, i) for i in range(r, n)), Fraction(0))
    scale = Fraction(2 * r * (r - 1), n * n)
    if rule is PayoffRule.SEEN_FRACTION:
        return Fraction(4 * r * (n - r), n * n * (n - 1)) + scale * h
    return scale * (Fraction(n - 2, r - 1) - Fraction(n - 2, n - 1) - h)


def payoff_curve(n: int, rule: PayoffRule | str) -> np.ndarray:
    """``G(r, n)`` for ``r = 0..n-1``; the undefined entries ``r < 2`` are ``-inf``."""
    rule = PayoffRule.parse(rule)
    if n < 3:
        raise DomainError(f"payoff rules need n >= 3, got {n}")
    if rule is PayoffRule.INDICATOR:
        return np.array([fixed_n.success_prob(n, r) for r in range(n)])
    prefix = harmonic_prefix(n)
    r = np.arange(2, n, dtype=float)
    h = prefix[n - 1] - prefix[1 : n - 1]
    scale = 2.0 * r * (r - 1.0) / (n * n)
    out = np.full(n, -np.inf)
    if rule is PayoffRule.SEEN_FRACTION:
        out[2:] = 4.0 * r * (n - r) / (n * n * (n - 1.0)) + scale * h
    else:
        out[2:] = scale * ((n - 2.0) / (r - 1.0) - (n - 2.0) / (n - 1.0) - h)
    return out


def optimal_payoff(n: int, rule: PayoffRule | str, with_curve: bool = False) -> OptResult:
    rule = PayoffRule.parse(rule)
    if rule is PayoffRule.INDICATOR:
        return fixed_n.solve(n, with_curve)
    g = payoff_curve(n, rule)
    m = int(np.argmax(g))
    curve = [(r, float(g[r])) for r in range(2, n)] if with_curve else None
    return OptResult(m, expected_payoff(n, m, rule), curve)


def estimate_payoff_cutoff(n: int, rule: PayoffRule | str, rounding: str = "nearest") -> int:
    """Affine integer estimate ``[n * slope + offset]`` of the optimal cutoff."""
    rule = PayoffRule.parse(rule)
    if rule is PayoffRule.INDICATOR:
        raise DomainError("no affine estimator is defined for the indicator payoff")
    x = _slope(rule) * n + _offset(rule)
    if rounding == "nearest":
        return math.floor(x + 0.5)
    if rounding == "floor":
        return math.floor(x)
    raise DomainError(f"unknown rounding {rounding!r}")


def _slope(rule: PayoffRule) -> float:
    return CONSTANTS.inv_sqrt_e if rule is PayoffRule.SEEN_FRACTION else CONSTANTS.theta


def _offset(rule: PayoffRule) -> float:
    return CONSTANTS.mu_seen if rule is PayoffRule.SEEN_FRACTION else CONSTANTS.mu_unseen


def limit_curve(x: float, rule: PayoffRule | str) -> float:
    """Large-``n`` objective as a function of the rejected fraction ``x``."""
    rule = PayoffRule.parse(rule)
    if not 0.0 < x <= 1.0:
        raise DomainError(f"x must lie in (0, 1], got {x}")
    if rule is PayoffRule.SEEN_FRACTION:
        return -2.0 * x * x * math.log(x)
    if rule is PayoffRule.UNSEEN_FRACTION:
        return 2.0 * x * (1.0 - x + x * math.log(x))
    return 2.0 * x * (x - 1.0) - 2.0 * x * math.log(x)


def refit_offset(rule: PayoffRule | str, n_lo: int, n_hi: int, rounding: str = "floor") -> tuple[float, int]:
    """Offset ``c`` minimising mismatches of ``[n * slope + c]`` against the exact argmax.

    Returns ``(c, mismatches)``. Each ``n`` admits a half-open window of offsets
    (width 1) under either rounding; the best ``c`` is found by sweeping all
    window endpoints.
    """
    rule = PayoffRule.parse(rule)
    if rule is PayoffRule.INDICATOR:
        raise DomainError("no affine estimator is defined for the indicator payoff")
    slope = _slope(rule)
    shift = 0.5 if rounding == "nearest" else 0.0
    lows = []
    for n in range(max(n_lo, 3), n_hi + 1):
        m = int(np.argmax(payoff_curve(n, rule)))
        lows.append(m - n * slope - shift)
    lo = np.sort(np.asarray(lows))
    hi = lo + 1.0
    best_c, best_bad = 0.0, len(lo) + 1
    for c in np.concatenate([lo, hi]):
        # n matches iff low_n <= c < low_n + 1
        bad = (lo.size - np.searchsorted(lo, c, side="right")) + np.searchsorted(hi, c, side="right")
        if bad < best_bad:
            best_c, best_bad = float(c), int(bad)
    return best_c, best_bad
