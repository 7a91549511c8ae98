"""Best-or-worst game with a known number ``n`` of candidates.

A cutoff ``r`` means: let the first ``r`` candidates go, then take the first
one that beats, or loses to, everything seen before it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


@dataclass(frozen=True)
class OptResult:
    argmax_r: int
    value: float
    curve: list[tuple[int, float]] | None = None


def _check(n: int, r: int) -> None:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if not 0 <= r <= n - 1:
        raise DomainError(f"cutoff r={r} outside [0, {n - 1}] for n={n}")


def success_prob_exact(n: int, r: int) -> Fraction:
    """Exact success probability as a fraction."""
    _check(n, r)
    if n <= 2:
        return Fraction(1)
    if r <= 1:
        # r=0 takes the first item, r=1 the second, which is always a relative extremum.
        return Fraction(2, n)
    return Fraction(2 * r * (n - r), n * (n - 1))


def success_prob(n: int, r: int) -> float:
    """Probability of ending with the overall best or worst item."""
    _check(n, r)
    if n <= 2:
        return 1.0
    if r <= 1:
        return 2.0 / n
    return 2.0 * r * (n - r) / (n * (n - 1))


def optimal_cutoff(n: int) -> int:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return 0 if n <= 2 else n // 2


def optimal_prob(n: int) -> float:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if n <= 2:
        return 1.0
    if n % 2 == 0:
        return n / (2.0 * (n - 1))
    return (n + 1) / (2.0 * n)


def sweep(n: int) -> list[tuple[int, float]]:
    """``(r, success_prob(n, r))`` for every cutoff ``r = 0..n-1``."""
    if n < 3:
        raise DomainError(f"sweep needs n >= 3, got {n}")
    return [(r, success_prob(n, r)) for r in range(n)]


def solve(n: int, with_curve: bool = False) -> OptResult:
    r = optimal_cutoff(n)
    curve = sweep(n) if with_curve and n >= 3 else None
    return OptResult(r, optimal_prob(n), curve)
