"""The game when the number of candidates is uniform on ``{1, ..., N}``.

``P(r, N)`` averages the known-``n`` success probability over ``n = r+1..N``.
For ``r >= 2`` it collapses to ``(2r/N) (r/N - 1 + H(N, r))`` with
``H(N, r) = sum_{i=r}^{N-1} 1/i``.

Two argmax notions live here. ``curve_argmax`` maximises the closed-form
curve over ``r >= 1``; the integer estimators are scored against it.
``optimal_uniform`` adds the conventions ``m(1) = m(2) = 0`` with
success probability 1. Accepting the very first candidate (``r = 0``) is
excluded from the scan by default because it dominates only for ``N <= 13``
and is not part of the curve being studied; pass ``min_r=0`` to include it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import fixed_n
from .errors import DomainError
from .specfun import CONSTANTS, digamma, harmonic_prefix, harmonic_range, lambert_w0


class EstimatorId(str, enum.Enum):
    FLOOR_THETA = "floor_theta"
    NEAREST_THETA = "nearest_theta"
    AFFINE_THETA = "affine_theta"
    H_FORMULA = "h_formula"


@dataclass(frozen=True)
class UniformSolve:
    m: int
    p: float
    curve: list[tuple[int, float]] | None = None


def nearest_int(x: float) -> int:
    """Round half up."""
    return math.floor(x + 0.5)


def success_prob_uniform(N: int, r: int) -> float:
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    if not 0 <= r <= N - 1:
        raise DomainError(f"cutoff r={r} outside [0, {N - 1}] for N={N}")
    if r >= 2:
        return (2.0 * r / N) * (r / N - 1.0 + harmonic_range(r, N))
    # sum_{i=2}^N 2/i
    tail = 2.0 * harmonic_range(2, N + 1) if N >= 2 else 0.0
    if r == 1:
        return tail / N
    return (1.0 + tail) / N


def uniform_curve(N: int, min_r: int = 1) -> np.ndarray:
    """``P(r, N)`` for ``r = 0..N-1``; entries below ``min_r`` are ``-inf``."""
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    prefix = harmonic_prefix(N)
    out = np.full(N, -np.inf)
    if N > 2:
        r = np.arange(2, N, dtype=float)
        h = prefix[N - 1] - prefix[1 : N - 1]
        out[2:] = (2.0 * r / N) * (r / N - 1.0 + h)
    tail = 2.0 * (prefix[N] - 1.0)
    if N >= 2:
        out[1] = tail / N
    out[0] = (1.0 + tail) / N
    if min_r > 0:
        out[:min_r] = -np.inf
    return out


def curve_argmax(N: int, min_r: int = 1) -> int:
    """Smallest maximiser of ``P(., N)`` over ``r in [min_r, N-1]``."""
    if N <= min_r:
        return 0
    return int(np.argmax(uniform_curve(N, min_r)))


def optimal_uniform(N: int, min_r: int = 1, with_curve: bool = False) -> UniformSolve:
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    if N <= 2:
        curve = [(r, success_prob_uniform(N, r)) for r in range(N)] if with_curve else None
        return UniformSolve(0, 1.0, curve)
    m = curve_argmax(N, min_r)
    curve = None
    if with_curve:
        curve = [(r, success_prob_uniform(N, r)) for r in range(N)]
    return UniformSolve(m, success_prob_uniform(N, m), curve)


def h_formula(N: float) -> float:
    """Refined real-valued cutoff estimate; defined for ``N >= 5``.

    For smaller ``N`` the inner Lambert W argument drops below ``-1/e``.
    """
    w = lambert_w0(-2.0 * math.exp(-2.0))
    inner = 1.0 / (math.exp(1.5 / N) * N * w)
    return 0.5 + 0.75 * w + w / (4.0 * (1.0 + w)) - 1.0 / (2.0 * lambert_w0(inner))


def lambert_digamma_cutoff(N: int) -> float:
    """Stationary point of the digamma approximation of ``P(., N)``."""
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    return -0.5 * N * lambert_w0(-2.0 * math.exp(-2.0 + digamma(N)) / N)


def estimate_cutoff(N: int, estimator: EstimatorId | str) -> int:
    estimator = EstimatorId(estimator)
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    theta = CONSTANTS.vartheta
    if estimator is EstimatorId.FLOOR_THETA:
        return math.floor(N * theta)
    if estimator is EstimatorId.NEAREST_THETA:
        return nearest_int(N * theta)
    if estimator is EstimatorId.AFFINE_THETA:
        return nearest_int(N * theta + CONSTANTS.affine_shift_uniform)
    if N < 5:
        raise DomainError(f"h_formula needs N >= 5, got {N}")
    return nearest_int(h_formula(N))


def limit_curve(x: float) -> float:
    """Large-``N`` profile ``2x(x-1) - 2x log x`` of ``P(xN, N)``."""
    if not 0.0 < x <= 1.0:
        raise DomainError(f"x must lie in (0, 1], got {x}")
    return 2.0 * x * (x - 1.0) - 2.0 * x * math.log(x)


def known_count_prob(N: int) -> float:
    """Average of the known-``n`` optimum over ``n = 1..N``."""
    return math.fsum(fixed_n.optimal_prob(n) for n in range(1, N + 1)) / N


def info_value_uniform(N: int) -> tuple[float, float, float]:
    """``(p_known, p_unknown, p_known - p_unknown)`` for a uniform count on ``1..N``."""
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    pknown = known_count_prob(N)
    punknown = optimal_uniform(N).p
    return pknown, punknown, pknown - punknown
