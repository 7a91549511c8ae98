import math

import mpmath
import numpy as np
import pytest
from scipy import stats

from bestworst import fixed_n, poisson_n
from bestworst.errors import DomainError


def _mp_prob(lam: float, r: int) -> float:
    """High-precision oracle: known-n success probability averaged over Poisson weights."""
    with mpmath.workdps(40):
        lam = mpmath.mpf(lam)

        def pmf(i):
            return mpmath.exp(-lam + i * mpmath.log(lam) - mpmath.loggamma(i + 1))

        top = int(lam + 40 * mpmath.sqrt(lam) + 60)
        terms = (mpmath.mpf(fixed_n.success_prob_exact(i, r).numerator) / fixed_n.success_prob_exact(i, r).denominator * pmf(i) for i in range(max(r + 1, 1), top))
        return float(mpmath.fsum(terms))


@pytest.mark.parametrize("lam, r", [(0.5, 0), (2.0, 1), (5.0, 2), (10.0, 4), (10.0, 7), (30.0, 14)])
def test_success_prob_against_mp_oracle(lam, r):
    assert poisson_n.success_prob_poisson(lam, r) == pytest.approx(_mp_prob(lam, r), abs=1e-12)


def test_r0_r1_relation():
    for lam in (0.3, 2.0, 9.0):
        p0, p1 = poisson_n.success_prob_poisson(lam, 0), poisson_n.success_prob_poisson(lam, 1)
        assert p0 - p1 == pytest.approx(lam * math.exp(-lam), abs=1e-13)


def test_small_mean_tends_to_zero():
    vals = [poisson_n.success_prob_poisson(lam, 0) for lam in (1e-2, 1e-4, 1e-6)]
    assert vals[0] > vals[1] > vals[2] and vals[2] < 2e-6


def test_curve_matches_pointwise():
    c = poisson_n.poisson_curve(10.0, 30)
    for r in range(31):
        assert c[r] == pytest.approx(poisson_n.success_prob_poisson(10.0, r), abs=1e-14)


def test_optimal_examples():
    assert poisson_n.optimal_poisson(2.01771).m == 0
    assert poisson_n.optimal_poisson(10.0).m == 4
    assert poisson_n.optimal_poisson(100.0).m == 49


def test_lambda_tilde():
    lam, p = poisson_n.lambda_tilde()
    assert lam == pytest.approx(2.01771, abs=1e-4)
    assert p == pytest.approx(0.726470, abs=1e-5)
    assert poisson_n.success_prob_poisson(2.01771, 0) == pytest.approx(0.726470, abs=1e-5)
    for d in (-0.01, 0.01):
        assert poisson_n.success_prob_poisson(lam + d, 0) < p


def test_breakpoints():
    bps = poisson_n.breakpoints(20.0)
    assert bps[0] > 2.01771
    assert all(a < b for a, b in zip(bps, bps[1:]))
    assert abs(poisson_n.success_prob_poisson(bps[0], 0) - poisson_n.success_prob_poisson(bps[0], 2)) < 1e-10
    ms = [0] + list(range(2, len(bps) + 2))
    for i, lam in enumerate(bps):
        assert poisson_n.optimal_poisson(lam - 1e-6).m == ms[i]
        assert poisson_n.optimal_poisson(lam + 1e-6).m == ms[i + 1]
    assert poisson_n.breakpoints(1.0) == []


def test_series_triple():
    for lam in (0.1, 2.0, 10.0, 30.0):
        t = poisson_n.series_triple(lam)
        assert t.s2 == pytest.approx(t.s1 - t.s3, rel=1e-12)
        with mpmath.workdps(30):
            s1 = mpmath.nsum(lambda i: mpmath.mpf(lam) ** i / ((i - 1) * mpmath.factorial(i)), [2, mpmath.inf])
            assert t.s1 == pytest.approx(float(s1 * mpmath.exp(-lam)), rel=1e-13)


def test_s1_closed_form():
    # e^lam S1 = 1 - e^x + x + x I(x), with I the entire exponential integral
    from bestworst.specfun import ein_integral

    for x in (0.5, 3.0, 12.0):
        closed = 1 - math.exp(x) + x + x * ein_integral(x)
        assert poisson_n.series_triple(x).s1 == pytest.approx(closed * math.exp(-x), rel=1e-11)


def test_identity_p_equals_pstar_minus_f():
    for lam in (2.0, 5.0, 10.0, 30.0):
        for r in range(2, int(lam + 4 * math.sqrt(lam)) + 1):
            lhs = poisson_n.success_prob_poisson(lam, r)
            rhs = poisson_n.p_star(lam, r) - poisson_n.excess_sum(lam, r)
            assert lhs == pytest.approx(rhs, abs=5e-12)


def test_p_star_and_excess_examples():
    assert poisson_n.p_star(5.0, 0) == 0.0
    ms = poisson_n.m_star(5.0)
    assert poisson_n.p_star(5.0, ms) >= max(poisson_n.p_star(5.0, ms - 0.01), poisson_n.p_star(5.0, ms + 0.01))
    assert poisson_n.excess_sum(5.0, 2) == 0.0
    f = poisson_n.excess_sum(20.0, 10)
    assert f < 0 and abs(f) < 1 / 20
    assert abs(poisson_n.excess_sum(200.0, 100)) < 0.005


def test_m_star():
    assert abs(poisson_n.m_star(200.0) - 99) <= 0.05
    assert abs(poisson_n.m_star(40.0) - 19) <= 0.3
    assert abs(poisson_n.m_star(20.0) - 9) <= 0.5
    assert math.isfinite(poisson_n.m_star(1e-6))


def test_large_mean_behaviour():
    for lam in (100.0, 200.0):
        sol = poisson_n.optimal_poisson(lam)
        # approaches 1/2 from below
        assert 0.499 < sol.p < 0.5
        assert poisson_n.success_prob_poisson(lam, round(lam / 2)) >= 0.49


def test_truncation_soundness():
    for lam in (3.0, 40.0):
        for r in (0, 2, int(lam / 2)):
            for tol in (1e-8, 1e-10, 1e-12):
                a = poisson_n.success_prob_poisson(lam, r, tol)
                b = poisson_n.success_prob_poisson(lam, r, tol / 2)
                assert abs(a - b) < tol


def test_info_value():
    direct, closed, punknown = poisson_n.info_value_poisson(50.0)
    assert 0.5 < direct < 0.52
    assert 0.49 < closed < 0.52
    assert direct - punknown < 0.02
    oracle = math.fsum(fixed_n.optimal_prob(n) * stats.poisson.pmf(n, 3.0) for n in range(1, 80))
    assert poisson_n.known_count_prob(3.0) == pytest.approx(oracle, abs=1e-12)


def test_domain():
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(DomainError):
            poisson_n.success_prob_poisson(bad, 0)
    with pytest.raises(DomainError):
        poisson_n.success_prob_poisson(2.0, -1)
    with pytest.raises(OverflowError):
        poisson_n.series_triple(800.0)
    assert np.all(poisson_n.poisson_curve(1.0, 5) >= 0)
