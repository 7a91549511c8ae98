"""The game when the number of candidates is Poisson(lam).

All sums run over the ratio-recurrence pmf stream from ``specfun``; nothing
here forms a raw factorial. Drawing zero candidates counts as a loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import fixed_n
from .errors import DegenerateError, DomainError
from .specfun import EXP_ARG_MAX, poisson_table, shi

DEFAULT_TOL = 1e-12
SERIES_TOL = 1e-15


@dataclass(frozen=True)
class PoissonSolve:
    m: int
    p: float
    r_max_scanned: int
    tol: float


@dataclass(frozen=True)
class SeriesTriple:
    """``e^-lam`` times the series S1, S2, S3."""

    s1: float
    s2: float
    s3: float


def _check_lam(lam: float) -> float:
    lam = float(lam)
    if not lam > 0.0 or math.isinf(lam):
        raise DomainError(f"Poisson mean must be positive and finite, got {lam!r}")
    return lam


def success_prob_poisson(lam: float, r: int, tol: float = DEFAULT_TOL) -> float:
    """Success probability of cutoff ``r`` with a Poisson(lam) number of candidates."""
    lam = _check_lam(lam)
    if r < 0:
        raise DomainError(f"cutoff must be >= 0, got {r}")
    k, pmf = poisson_table(lam, tol)
    if r <= 1:
        i = k[3:]
        rest = math.fsum(2.0 / i * pmf[3:])
        head = math.fsum(pmf[1:3]) if r == 0 else float(pmf[2]) if k.size > 2 else 0.0
        return head + rest
    if r + 1 >= k.size:
        return 0.0
    i = k[r + 1 :].astype(float)
    return math.fsum(2.0 * (i - r) * r / (i * (i - 1.0)) * pmf[r + 1 :])


def scan_limit(lam: float) -> int:
    return math.ceil(lam + 10.0 * math.sqrt(lam) + 20.0)


def poisson_curve(lam: float, r_max: int | None = None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``P(r, lam)`` for ``r = 0..r_max`` in one pass over the pmf table."""
    lam = _check_lam(lam)
    if r_max is None:
        r_max = scan_limit(lam)
    k, pmf = poisson_table(lam, tol)
    kf = k.astype(float)
    out = np.zeros(r_max + 1)
    rest = np.sum(2.0 / kf[3:] * pmf[3:])
    out[0] = pmf[1] + pmf[2] + rest
    if r_max >= 1:
        out[1] = pmf[2] + rest
    if r_max >= 2:
        r = np.arange(2, r_max + 1, dtype=float)[:, None]
        i = kf[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            coeff = np.where(i > r, 2.0 * (i - r) * r / (i * (i - 1.0)), 0.0)
        out[2:] = coeff @ pmf
    return out


def optimal_poisson(lam: float, tol: float = DEFAULT_TOL) -> PoissonSolve:
    lam = _check_lam(lam)
    r_max = scan_limit(lam)
    m = int(np.argmax(poisson_curve(lam, r_max, tol)))
    return PoissonSolve(m, success_prob_poisson(lam, m, tol), r_max, tol)


def series_triple(lam: float, tol: float = SERIES_TOL) -> SeriesTriple:
    """Scaled ``S1 = sum_{i>=2} x^i/((i-1) i!)``, ``S3 = sum x^i/(i i!)``, ``S2 = S1 - S3``.

    Each is summed directly as positive pmf-weighted terms, so no cancellation
    occurs at small ``lam``.
    """
    lam = _check_lam(lam)
    if lam > EXP_ARG_MAX:
        raise OverflowError(f"series_triple limited to lam <= {EXP_ARG_MAX}")
    k, pmf = poisson_table(lam, tol)
    i = k[2:].astype(float)
    p = pmf[2:]
    s1 = math.fsum(p / (i - 1.0))
    s3 = math.fsum(p / i)
    s2 = math.fsum(p / (i * (i - 1.0)))
    return SeriesTriple(s1, s2, s3)


def p_star(lam: float, r: float) -> float:
    """The full-range series ``sum_{i>=2} 2(i-r)r/(i(i-1)) pmf(i)``, quadratic in ``r``."""
    t = series_triple(lam)
    return 2.0 * r * t.s1 - 2.0 * r * r * t.s2


def excess_sum(lam: float, r: int) -> float:
    """The non-positive head ``sum_{i=2}^{r} 2(i-r)r/(i(i-1)) pmf(i)``."""
    lam = _check_lam(lam)
    if r < 2:
        raise DomainError(f"excess_sum needs r >= 2, got {r}")
    log_lam = math.log(lam)
    terms = [
        2.0 * (i - r) * r / (i * (i - 1.0)) * math.exp(-lam + i * log_lam - math.lgamma(i + 1))
        for i in range(2, r + 1)
    ]
    return math.fsum(terms)


def m_star(lam: float) -> float:
    """Vertex ``S1 / (2 S2)`` of the parabola ``r -> p_star(lam, r)``."""
    t = series_triple(lam)
    if abs(t.s2) < 1e-300:
        raise DegenerateError(f"S2 vanishes numerically at lam={lam}")
    return t.s1 / (2.0 * t.s2)


def _gap(lam: float, i: int) -> float:
    # Positive while cutoff i (0 for the first arc) still beats the next one.
    lo = 0 if i == 1 else i
    hi = 2 if i == 1 else i + 1
    return success_prob_poisson(lam, lo, tol=SERIES_TOL) - success_prob_poisson(lam, hi, tol=SERIES_TOL)


def breakpoints(lam_hi: float, step: float = 0.25) -> list[float]:
    """Means ``lam_i`` at which the optimal cutoff moves off ``i`` (off 0 for ``i = 1``).

    Cutoff 1 never wins because ``P(0, lam) = P(1, lam) + lam e^-lam``, so the
    first arc ends where ``P(0) = P(2)``. Each root is bracketed by stepping
    from the previous breakpoint, then polished with Brent's method.
    """
    out: list[float] = []
    lam = step
    i = 1
    while lam < lam_hi:
        if _gap(lam, i) > 0.0:
            lam += step
            continue
        a = max(lam - step, out[-1] if out else 1e-3)
        root = brentq(_gap, a, lam, args=(i,), xtol=1e-13, rtol=1e-15, maxiter=200)
        if root >= lam_hi:
            break
        out.append(root)
        i += 1
    return out


def lambda_tilde() -> tuple[float, float]:
    """Mean at which the optimal success probability peaks, and that peak value.

    The peak sits on the first arc, where taking the first candidate is optimal,
    so it is found by maximising ``P(0, lam)`` below the first breakpoint.
    """
    hi = breakpoints(6.0)[0]
    res = minimize_scalar(
        lambda x: -success_prob_poisson(x, 0, tol=SERIES_TOL),
        bounds=(0.1, hi),
        method="bounded",
        options={"xatol": 1e-10},
    )
    lam = float(res.x)
    return lam, success_prob_poisson(lam, 0, tol=SERIES_TOL)


def known_count_prob(lam: float, tol: float = DEFAULT_TOL) -> float:
    """``sum_{n>=1} p_n pmf(n)`` with ``p_n`` the known-``n`` optimum."""
    k, pmf = poisson_table(_check_lam(lam), tol)
    return math.fsum(fixed_n.optimal_prob(int(n)) * p for n, p in zip(k[1:], pmf[1:]))


def info_value_poisson(lam: float) -> tuple[float, float, float]:
    """``(p_known_direct, p_known_closed, p_unknown)``.

    ``p_known_closed`` is ``lam Shi(lam) e^-lam``; it agrees with the direct sum
    only asymptotically, so both are returned.
    """
    lam = _check_lam(lam)
    if lam > EXP_ARG_MAX:
        raise OverflowError(f"info_value_poisson limited to lam <= {EXP_ARG_MAX}")
    direct = known_count_prob(lam)
    closed = lam * (shi(lam) * math.exp(-lam))
    return direct, closed, optimal_poisson(lam).p
