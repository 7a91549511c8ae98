"""Real special functions used by the solvers.

Everything here is scalar, pure Python and dependency free apart from the
harmonic prefix table, which is a numpy array so that the cutoff scans can
index it in bulk.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DomainError, SeriesOverflowError

EULER_GAMMA = 0.57721566490153286061
INV_E = math.exp(-1.0)

# Relative stopping tolerance for the positive power series below.
SERIES_RTOL = 1e-16

# Largest argument for which e**x stays finite with some headroom.
EXP_ARG_MAX = 700.0

_BRANCH_SLACK = 1e-15
_W_MAXITER = 50


def _branch_point_series(p: float) -> float:
    # W(x) around x = -1/e in powers of p = +-sqrt(2(e x + 1)).
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3 - 43.0 / 540.0 * p ** 4


def _fritsch(x: float, w: float) -> float:
    # Fourth-order Fritsch-Shafer-Crowley iteration on w e^w = x.
    for _ in range(_W_MAXITER):
        z = math.log(x / w) - w
        w1 = 1.0 + w
        if w1 == 0.0:
            return w
        q = 2.0 * w1 * (w1 + 2.0 * z / 3.0)
        denom = q - 2.0 * z
        if denom == 0.0:
            return w
        eps = z / w1 * (q - z) / denom
        w_new = w * (1.0 + eps)
        if abs(w_new - w) <= 1e-15 * (1.0 + abs(w_new)):
            return w_new
        w = w_new
    return w


def _check_branch_domain(x: float) -> float:
    if math.isnan(x):
        raise DomainError("Lambert W argument is NaN")
    if x < -INV_E - _BRANCH_SLACK:
        raise DomainError(f"Lambert W undefined for x={x!r} < -1/e")
    return max(x, -INV_E)


def lambert_w0(x: float) -> float:
    """Principal real branch of the Lambert W function, ``W0(x) >= -1``.

    Arguments up to 1e-15 below ``-1/e`` are clamped onto the branch point.
    """
    x = _check_branch_domain(float(x))
    if x == 0.0:
        return 0.0
    if x == -INV_E:
        return -1.0
    if math.isinf(x):
        return math.inf
    if x < -0.3:
        w = _branch_point_series(math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0)))
    elif abs(x) < 0.3:
        w = x
    elif x < math.e:
        w = math.log1p(x) * 0.8
    else:
        lx = math.log(x)
        w = lx - math.log(lx)
    return _fritsch(x, w)


def lambert_wm1(x: float) -> float:
    """Lower real branch ``W_{-1}(x)`` for ``-1/e <= x < 0``; returns values ``<= -1``."""
    x = float(x)
    if not x < 0.0:
        raise DomainError(f"W_-1 requires x < 0, got {x!r}")
    x = _check_branch_domain(x)
    if x == -INV_E:
        return -1.0
    if x < -0.25:
        w = _branch_point_series(-math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0)))
    else:
        lx = math.log(-x)
        w = lx - math.log(-lx)
    return min(_fritsch(x, w), -1.0)


_PSI_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
)


def digamma(x: float) -> float:
    """Logarithmic derivative of the gamma function for ``x > 0``."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"digamma implemented for x > 0 only, got {x!r}")
    shift = []
    while x < 10.0:
        shift.append(1.0 / x)
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    power = inv2
    for coeff in _PSI_ASYMPTOTIC:
        tail += coeff * power
        power *= inv2
    return math.log(x) - 0.5 / x - tail - math.fsum(shift)


def ein_integral(x: float, rtol: float = SERIES_RTOL) -> float:
    """The entire integral ``I(x) = int_0^x (e^t - 1)/t dt`` for ``x >= 0``.

    Summed as ``sum_{k>=1} x^k / (k k!)``. With this, the exponential integral
    reads ``Ei(x) = EULER_GAMMA + log(x) + I(x)``.
    """
    x = float(x)
    if x < 0.0:
        raise DomainError(f"ein_integral requires x >= 0, got {x!r}")
    if x > EXP_ARG_MAX:
        raise SeriesOverflowError(f"ein_integral({x}) exceeds double range")
    if x == 0.0:
        return 0.0
    fact_term = 1.0  # x^k / k!
    total = 0.0
    k = 0
    while True:
        k += 1
        fact_term *= x / k
        term = fact_term / k
        total += term
        if k > x and term < rtol * total:
            return total


def shi(x: float, rtol: float = SERIES_RTOL) -> float:
    """Hyperbolic sine integral ``int_0^x sinh(t)/t dt`` for ``x >= 0``."""
    x = float(x)
    if x < 0.0:
        raise DomainError(f"shi requires x >= 0, got {x!r}")
    if x > EXP_ARG_MAX:
        raise SeriesOverflowError(f"shi({x}) exceeds double range")
    if x == 0.0:
        return 0.0
    x2 = x * x
    fact_term = x  # x^(2k+1) / (2k+1)!
    total = x
    k = 0
    while True:
        k += 1
        fact_term *= x2 / ((2 * k) * (2 * k + 1))
        term = fact_term / (2 * k + 1)
        total += term
        if 2 * k > x and term < rtol * total:
            return total


class _HarmonicTable:
    """Kahan-summed prefix table ``prefix[k] = sum_{i=1}^k 1/i``, grown on demand."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._prefix = np.zeros(1)
        self._sum = 0.0
        self._comp = 0.0

    def ensure(self, n: int) -> np.ndarray:
        prefix = self._prefix
        if n < prefix.size:
            return prefix
        with self._lock:
            if n >= self._prefix.size:
                self._grow(max(n + 1, 2 * self._prefix.size, 1024))
            return self._prefix

    def _grow(self, size: int) -> None:
        old = self._prefix
        new = np.empty(size)
        new[: old.size] = old
        s, c = self._sum, self._comp
        for i in range(old.size, size):
            y = 1.0 / i - c
            t = s + y
            c = (t - s) - y
            s = t
            new[i] = s
        self._sum, self._comp = s, c
        self._prefix = new


_HARMONIC = _HarmonicTable()


def harmonic_prefix(n: int) -> np.ndarray:
    """Read-only view of the prefix table covering indices ``0..n`` (at least)."""
    table = _HARMONIC.ensure(int(n))
    view = table.view()
    view.flags.writeable = False
    return view


def harmonic_range(r: int, n: int) -> float:
    """``H(n, r) = sum_{i=r}^{n-1} 1/i`` with ``1 <= r <= n``; zero when ``r == n``."""
    if r < 1 or n < r:
        raise DomainError(f"harmonic_range needs 1 <= r <= n, got r={r}, n={n}")
    if r == n:
        return 0.0
    prefix = _HARMONIC.ensure(n)
    return float(prefix[n - 1] - prefix[r - 1])


def poisson_terms(lam: float, tol: float = 1e-15) -> Iterator[tuple[int, float]]:
    """Yield ``(k, e^-lam lam^k / k!)`` for ``k = 0, 1, ...`` until the tail is below ``tol``.

    Terms come from the ratio recurrence ``pmf(k) = pmf(k-1) lam / k``; above
    ``EXP_ARG_MAX`` each term is exponentiated from log space instead, since
    ``e^-lam`` itself would underflow.
    """
    lam = float(lam)
    if not lam > 0.0:
        raise DomainError(f"Poisson mean must be positive, got {lam!r}")
    if not 0.0 < tol < 1.0:
        raise DomainError(f"tol must lie in (0, 1), got {tol!r}")
    log_space = lam > EXP_ARG_MAX
    log_lam = math.log(lam)
    k = 0
    pmf = 0.0 if log_space else math.exp(-lam)
    while True:
        if log_space:
            pmf = math.exp(-lam + k * log_lam - math.lgamma(k + 1))
        yield k, pmf
        if k > lam:
            q = lam / (k + 1)
            if pmf * q / (1.0 - q) < tol:
                return
        k += 1
        if not log_space:
            pmf *= lam / k


def poisson_table(lam: float, tol: float = 1e-15) -> tuple[np.ndarray, np.ndarray]:
    """``poisson_terms`` materialised as ``(k, pmf)`` numpy arrays."""
    ks, ps = zip(*poisson_terms(lam, tol))
    return np.asarray(ks, dtype=np.int64), np.asarray(ps, dtype=float)


@dataclass(frozen=True)
class Constants:
    euler_gamma: float
    vartheta: float
    two_vtheta_prob: float
    theta: float
    inv_sqrt_e: float
    inv_e: float
    affine_shift_uniform: float
    mu_seen: float
    mu_unseen: float


def _build_constants() -> Constants:
    vartheta = -0.5 * lambert_w0(-2.0 * math.exp(-2.0))
    theta = -1.0 / (2.0 * lambert_wm1(-0.5 * math.exp(-0.5)))
    return Constants(
        euler_gamma=EULER_GAMMA,
        vartheta=vartheta,
        two_vtheta_prob=2.0 * (vartheta - vartheta * vartheta),
        theta=theta,
        inv_sqrt_e=math.exp(-0.5),
        inv_e=INV_E,
        affine_shift_uniform=1.0 / (4.0 - 2.0 * math.exp(2.0 - 2.0 * vartheta)),
        mu_seen=2.0 - 2.5 * math.exp(-0.5),
        mu_unseen=1.4034,
    )


CONSTANTS = _build_constants()
