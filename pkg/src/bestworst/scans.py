"""Exception scans for the integer cutoff estimators, and the summary table."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import payoff, poisson_n, uniform_n
from .errors import DomainError
from .payoff import PayoffRule
from .specfun import CONSTANTS


@dataclass(frozen=True)
class ExceptionReport:
    estimator: str
    n_lo: int
    n_hi: int
    mismatches: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def mismatch_ns(self) -> list[int]:
        return [n for n, _, _ in self.mismatches]

    def to_dict(self) -> dict:
        return {
            "estimator": self.estimator,
            "n_lo": self.n_lo,
            "n_hi": self.n_hi,
            "count": len(self.mismatches),
            "mismatches": [
                {"n": n, "estimated_r": est, "exact_r": exact} for n, est, exact in self.mismatches
            ],
        }


@dataclass(frozen=True)
class Conjecture:
    name: str
    n_lo: int
    n_max: int
    estimate: Callable[[int], int]
    exact: Callable[[int], int]


def _payoff_exact(rule: PayoffRule) -> Callable[[int], int]:
    return lambda n: int(np.argmax(payoff.payoff_curve(n, rule)))


CONJECTURES: dict[str, Conjecture] = {
    c.name: c
    for c in (
        Conjecture(
            "uniform-affine",
            2,
            3000,
            lambda n: uniform_n.nearest_int(n * CONSTANTS.vartheta + CONSTANTS.affine_shift_uniform),
            uniform_n.curve_argmax,
        ),
        # [n theta] read as the nearest integer.
        Conjecture(
            "uniform-floor",
            2,
            3000,
            lambda n: uniform_n.estimate_cutoff(n, uniform_n.EstimatorId.NEAREST_THETA),
            uniform_n.curve_argmax,
        ),
        Conjecture(
            "uniform-truncate",
            2,
            3000,
            lambda n: uniform_n.estimate_cutoff(n, uniform_n.EstimatorId.FLOOR_THETA),
            uniform_n.curve_argmax,
        ),
        Conjecture(
            "uniform-h",
            5,
            3000,
            lambda n: uniform_n.estimate_cutoff(n, uniform_n.EstimatorId.H_FORMULA),
            uniform_n.curve_argmax,
        ),
        Conjecture(
            "poisson-halfminus1",
            2,
            200,
            lambda lam: math.floor(lam / 2 - 1),
            lambda lam: poisson_n.optimal_poisson(float(lam)).m,
        ),
        Conjecture(
            "payoff-seen-mu",
            3,
            10000,
            lambda n: payoff.estimate_payoff_cutoff(n, PayoffRule.SEEN_FRACTION),
            _payoff_exact(PayoffRule.SEEN_FRACTION),
        ),
        Conjecture(
            "payoff-unseen-mu",
            3,
            10000,
            lambda n: payoff.estimate_payoff_cutoff(n, PayoffRule.UNSEEN_FRACTION),
            _payoff_exact(PayoffRule.UNSEEN_FRACTION),
        ),
    )
}


def run_conjecture(name: str, n_hi: int | None = None, n_lo: int | None = None) -> ExceptionReport:
    try:
        conj = CONJECTURES[name]
    except KeyError:
        raise KeyError(f"unknown conjecture {name!r}; choose from {sorted(CONJECTURES)}") from None
    lo = conj.n_lo if n_lo is None else max(n_lo, conj.n_lo)
    hi = conj.n_max if n_hi is None else n_hi
    if hi > conj.n_max:
        raise DomainError(f"{name} is limited to n <= {conj.n_max}")
    mismatches = []
    for n in range(lo, hi + 1):
        est, exact = conj.estimate(n), conj.exact(n)
        if est != exact:
            mismatches.append((n, est, exact))
    return ExceptionReport(name, lo, hi, mismatches)


@dataclass(frozen=True)
class TableRow:
    scenario: str
    classic_m: str
    classic_payoff: str
    bw_m: str
    bw_payoff: str


def _fmt(symbol: str, value: float) -> str:
    return f"{symbol} = {value:.6f}"


def summary_table() -> list[TableRow]:
    """Asymptotic cutoffs and payoffs; classic columns are quoted, not recomputed."""
    vt, th = CONSTANTS.vartheta, CONSTANTS.theta
    return [
        TableRow("n objects", "ne^{-1}", "e^{-1} = 0.367879", "n/2", _fmt("1/2", 0.5)),
        TableRow("lambda-Poisson", "lambda/e", "e^{-1} = 0.367879", "lambda/2", _fmt("1/2", 0.5)),
        TableRow(
            "Uniform [1,n]", "ne^{-1/2}", "2e^{-2} = 0.270671", "n*vartheta",
            _fmt("2(vartheta-vartheta^2)", 2.0 * (vt - vt * vt)),
        ),
        TableRow(
            "Payoff =(n-k)/n", "n*vartheta", "vartheta-vartheta^2 = 0.161903", "n*theta",
            _fmt("theta-theta^2", th - th * th),
        ),
        TableRow("Payoff =k/n", "n/2", "1/4 = 0.250000", "ne^{-1/2}", _fmt("e^{-1}", CONSTANTS.inv_e)),
    ]
