"""Monte Carlo engine and exhaustive enumeration for the literal game.

Only relative ranks matter, so an instance of size ``n`` is a uniformly random
permutation of ``0..n-1``: 0 is the worst item and ``n-1`` the best.

Reproducibility: trials are cut into fixed blocks of ``BLOCK`` trials and
block ``b`` draws from its own generator seeded by ``(seed, b)``. Results are
therefore the same whatever the number of workers, and totals are combined
with ``math.fsum`` so their rounding does not depend on merge order.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import DomainError
from .payoff import PayoffRule

BLOCK = 1 << 14
BRUTE_FORCE_MAX_N = 10


@dataclass(frozen=True)
class Fixed:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"Fixed model needs n >= 1, got {self.n}")


@dataclass(frozen=True)
class UniformRange:
    N: int

    def __post_init__(self) -> None:
        if self.N < 1:
            raise DomainError(f"UniformRange model needs N >= 1, got {self.N}")


@dataclass(frozen=True)
class Poisson:
    lam: float

    def __post_init__(self) -> None:
        if not self.lam > 0.0 or math.isinf(self.lam):
            raise DomainError(f"Poisson model needs a positive finite mean, got {self.lam}")


CountModel = Union[Fixed, UniformRange, Poisson]


@dataclass(frozen=True)
class TrialOutcome:
    n_drawn: int
    stop_index: int | None
    won: bool
    payoff: float


@dataclass(frozen=True)
class SimReport:
    trials: int
    successes: int
    mean_payoff: float
    std_error: float
    seed: int


def stop_index(ranks: Sequence[int], r: int) -> int | None:
    """1-based index at which the cutoff rule stops, or ``None`` if it never does."""
    n = len(ranks)
    if n == 0 or r >= n:
        return None
    if r == 0:
        return 1
    hi = max(ranks[:r])
    lo = min(ranks[:r])
    for k in range(r, n):
        v = ranks[k]
        if v > hi or v < lo:
            return k + 1
    return None


def _draw_counts(model: CountModel, rng: np.random.Generator, size: int) -> np.ndarray:
    if isinstance(model, Fixed):
        return np.full(size, model.n, dtype=np.int64)
    if isinstance(model, UniformRange):
        return rng.integers(1, model.N + 1, size=size)
    return rng.poisson(model.lam, size=size)


def _reward(rule: PayoffRule, k: np.ndarray | int, n: int) -> np.ndarray | float:
    if rule is PayoffRule.INDICATOR:
        return np.ones_like(k, dtype=float) if isinstance(k, np.ndarray) else 1.0
    if rule is PayoffRule.SEEN_FRACTION:
        return k / n
    return (n - k) / n


def run_trial(model: CountModel, r: int, rule: PayoffRule | str, rng: np.random.Generator) -> TrialOutcome:
    if r < 0:
        raise DomainError(f"cutoff must be >= 0, got {r}")
    rule = PayoffRule.parse(rule)
    n = int(_draw_counts(model, rng, 1)[0])
    if n == 0:
        return TrialOutcome(0, None, False, 0.0)
    ranks = rng.permutation(n).tolist()
    k = stop_index(ranks, r)
    if k is None:
        return TrialOutcome(n, None, False, 0.0)
    won = ranks[k - 1] in (0, n - 1)
    return TrialOutcome(n, k, won, float(_reward(rule, k, n)) if won else 0.0)


def _same_size_batch(n: int, count: int, r: int, rule: PayoffRule, rng: np.random.Generator):
    """Successes, payoff sum and payoff sum of squares for ``count`` games of size ``n``."""
    if r >= n:
        return 0, 0.0, 0.0
    ranks = rng.permuted(np.tile(np.arange(n), (count, 1)), axis=1)
    if r == 0:
        stop = np.zeros(count, dtype=np.int64)
        stopped = np.ones(count, dtype=bool)
    else:
        run_max = np.maximum.accumulate(ranks, axis=1)
        run_min = np.minimum.accumulate(ranks, axis=1)
        tail = ranks[:, r:]
        is_record = (tail > run_max[:, r - 1 : n - 1]) | (tail < run_min[:, r - 1 : n - 1])
        stopped = is_record.any(axis=1)
        stop = r + np.argmax(is_record, axis=1)
    picked = ranks[np.arange(count), stop]
    won = stopped & ((picked == 0) | (picked == n - 1))
    wins = int(won.sum())
    if wins == 0:
        return 0, 0.0, 0.0
    pay = _reward(rule, stop[won] + 1, n)
    return wins, float(np.sum(pay)), float(np.sum(pay * pay))


def _run_block(model: CountModel, r: int, rule: PayoffRule, seed: int, block: int, size: int):
    rng = np.random.default_rng([seed, block])
    counts = _draw_counts(model, rng, size)
    wins = 0
    s1: list[float] = []
    s2: list[float] = []
    values, freq = np.unique(counts, return_counts=True)
    for n, c in zip(values.tolist(), freq.tolist()):
        if n == 0:
            continue
        w, a, b = _same_size_batch(n, c, r, rule, rng)
        wins += w
        s1.append(a)
        s2.append(b)
    return wins, math.fsum(s1), math.fsum(s2)


def estimate(
    model: CountModel,
    r: int,
    rule: PayoffRule | str,
    trials: int,
    seed: int,
    workers: int = 1,
) -> SimReport:
    """Monte Carlo estimate of the expected payoff of cutoff ``r``."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    if r < 0:
        raise DomainError(f"cutoff must be >= 0, got {r}")
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    rule = PayoffRule.parse(rule)
    nblocks = -(-trials // BLOCK)
    sizes = [min(BLOCK, trials - b * BLOCK) for b in range(nblocks)]

    def job(b: int):
        return _run_block(model, r, rule, seed, b, sizes[b])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(nblocks)))
    else:
        parts = [job(b) for b in range(nblocks)]

    wins = sum(p[0] for p in parts)
    total = math.fsum(p[1] for p in parts)
    total_sq = math.fsum(p[2] for p in parts)
    mean = total / trials
    if trials > 1:
        var = max(total_sq - trials * mean * mean, 0.0) / (trials - 1)
    else:
        var = 0.0
    return SimReport(trials, wins, mean, math.sqrt(var / trials), seed)


def brute_force(n: int, r: int, rule: PayoffRule | str) -> Fraction:
    """Exact expected payoff over all ``n!`` equally likely orderings."""
    rule = PayoffRule.parse(rule)
    if not 1 <= n <= BRUTE_FORCE_MAX_N:
        raise DomainError(f"brute_force supports 1 <= n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if r < 0:
        raise DomainError(f"cutoff must be >= 0, got {r}")
    total = Fraction(0)
    count = 0
    for ranks in itertools.permutations(range(n)):
        count += 1
        k = stop_index(ranks, r)
        if k is not None and ranks[k - 1] in (0, n - 1):
            total += rule.reward(k, n)
    return total / count
