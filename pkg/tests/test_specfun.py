import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special, stats

from bestworst import specfun
from bestworst.errors import DomainError, SeriesOverflowError
from bestworst.specfun import CONSTANTS


@pytest.mark.parametrize(
    "x, expected",
    [(0.0, 0.0), (math.e, 1.0), (-2.0 * math.exp(-2.0), -0.40637573995996), (-math.exp(-1.0), -1.0)],
)
def test_w0_values(x, expected):
    assert specfun.lambert_w0(x) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize(
    "x, expected",
    [(-math.exp(-1.0), -1.0), (-0.5 / math.sqrt(math.e), -1.0 / (2 * 0.2846681))],
)
def test_wm1_values(x, expected):
    w = specfun.lambert_wm1(x)
    assert w == pytest.approx(expected, abs=2e-6)
    assert w * math.exp(w) == pytest.approx(x, rel=1e-14)


def test_wm1_residual():
    w = specfun.lambert_wm1(-0.01)
    assert w < -1.0
    assert w * math.exp(w) == pytest.approx(-0.01, rel=1e-14)


@settings(max_examples=300)
@given(st.floats(min_value=-math.exp(-1.0), max_value=1e6))
def test_w0_residual_and_scipy(x):
    w = specfun.lambert_w0(x)
    assert w >= -1.0
    assert w * math.exp(w) == pytest.approx(x, rel=1e-12, abs=1e-14)
    if x > -0.36:
        assert w == pytest.approx(special.lambertw(x, 0).real, rel=1e-12, abs=1e-14)


@settings(max_examples=300)
@given(st.floats(min_value=-math.exp(-1.0), max_value=-1e-300))
def test_wm1_residual_property(x):
    w = specfun.lambert_wm1(x)
    assert w <= -1.0
    assert w * math.exp(w) == pytest.approx(x, rel=1e-12, abs=1e-15)


def test_wm1_against_scipy_away_from_branch():
    for x in np.linspace(-0.35, -1e-8, 200):
        assert specfun.lambert_wm1(x) == pytest.approx(special.lambertw(x, -1).real, rel=1e-12)


@pytest.mark.parametrize("f, x", [(specfun.lambert_w0, -0.5), (specfun.lambert_wm1, 0.1), (specfun.lambert_wm1, -0.5)])
def test_w_domain(f, x):
    with pytest.raises(DomainError):
        f(x)


def test_digamma_values():
    assert specfun.digamma(1.0) == pytest.approx(-0.5772156649, abs=1e-10)
    assert specfun.digamma(2.0) == pytest.approx(0.4227843351, abs=1e-10)
    assert specfun.digamma(10.0) == pytest.approx(math.log(10) - 1 / 20 - 1 / 1200, abs=1e-6)
    with pytest.raises(DomainError):
        specfun.digamma(0.0)


@settings(max_examples=300)
@given(st.floats(min_value=1e-3, max_value=1e8))
def test_digamma_matches_scipy(x):
    assert specfun.digamma(x) == pytest.approx(special.digamma(x), rel=1e-12, abs=1e-12)


def _ein_quad(x):
    val, _ = integrate.quad(lambda t: math.expm1(t) / t if t else 1.0, 0.0, x, epsabs=0, epsrel=1e-13, limit=200)
    return val


def test_ein_values():
    assert specfun.ein_integral(0.0) == 0.0
    assert specfun.ein_integral(1.0) == pytest.approx(1.3179021514544, abs=1e-12)
    # I(1) + gamma = Ei(1)
    assert specfun.ein_integral(1.0) + specfun.EULER_GAMMA == pytest.approx(1.8951178163559, abs=1e-12)
    assert specfun.ein_integral(10.0) == pytest.approx(_ein_quad(10.0), rel=1e-10)


@pytest.mark.parametrize("x", [0.01, 0.5, 3.0, 30.0, 100.0])
def test_ein_against_expi_and_quadrature(x):
    oracle = special.expi(x) - specfun.EULER_GAMMA - math.log(x)
    assert specfun.ein_integral(x) == pytest.approx(oracle, rel=1e-10)
    assert specfun.ein_integral(x) == pytest.approx(_ein_quad(x), rel=1e-10)


def test_ein_overflow():
    with pytest.raises(SeriesOverflowError):
        specfun.ein_integral(800.0)


@pytest.mark.parametrize("x", [1e-3, 1.0, 5.0, 20.0, 300.0])
def test_shi_matches_scipy_and_quadrature(x):
    assert specfun.shi(x) == pytest.approx(special.shichi(x)[0], rel=1e-12)
    if x <= 20:
        q, _ = integrate.quad(lambda t: math.sinh(t) / t if t else 1.0, 0.0, x, epsrel=1e-13)
        assert specfun.shi(x) == pytest.approx(q, rel=1e-11)


def test_shi_values():
    assert specfun.shi(0.0) == 0.0
    assert specfun.shi(1.0) == pytest.approx(1.0572508753757, abs=1e-12)
    assert 0.4 < 20 * specfun.shi(20.0) * math.exp(-20.0) < 0.6


def test_harmonic_range():
    assert specfun.harmonic_range(2, 4) == pytest.approx(0.8333333333333333, abs=1e-15)
    assert specfun.harmonic_range(5, 5) == 0.0
    assert specfun.harmonic_range(2, 10) == pytest.approx(1.8289682539682, abs=1e-12)
    with pytest.raises(DomainError):
        specfun.harmonic_range(0, 4)
    with pytest.raises(DomainError):
        specfun.harmonic_range(5, 4)


@settings(max_examples=100)
@given(st.integers(1, 5000), st.integers(0, 5000))
def test_harmonic_range_against_fsum(r, extra):
    # prefix differences carry absolute error of a few ulp of H(n)
    n = r + extra
    assert specfun.harmonic_range(r, n) == pytest.approx(math.fsum(1.0 / i for i in range(r, n)), rel=1e-14, abs=8 * np.finfo(float).eps * (1 + math.log(n)))


def test_harmonic_prefix_is_read_only():
    h = specfun.harmonic_prefix(10)
    with pytest.raises(ValueError):
        h[0] = 1.0


@pytest.mark.parametrize("lam", [0.01, 1.0, 10.0, 100.0, 699.0])
def test_poisson_terms_match_scipy(lam):
    k, pmf = specfun.poisson_table(lam, 1e-15)
    assert np.allclose(pmf, stats.poisson.pmf(k, lam), rtol=1e-10, atol=1e-300)
    assert math.fsum(pmf) == pytest.approx(1.0, abs=1e-13)


def test_poisson_terms_tail_bound():
    _, pmf = specfun.poisson_table(10.0, 1e-12)
    assert 0.0 < 1.0 - math.fsum(pmf) < 1e-12


def test_poisson_terms_large_mean_uses_log_space():
    k, pmf = specfun.poisson_table(2000.0, 1e-15)
    assert math.fsum(pmf) == pytest.approx(1.0, abs=1e-12)
    assert k[np.argmax(pmf)] in (1999, 2000)


def test_poisson_terms_domain():
    with pytest.raises(DomainError):
        specfun.poisson_table(0.0)


def test_constants():
    c = CONSTANTS
    assert c.vartheta == pytest.approx(0.20318786, abs=1e-8)
    # root of -log x - 2 + 2x = 0
    assert -math.log(c.vartheta) - 2 + 2 * c.vartheta == pytest.approx(0.0, abs=1e-14)
    assert c.theta == pytest.approx(0.284668, abs=1e-6)
    assert 2 * c.theta * math.log(c.theta) == pytest.approx(c.theta - 1, abs=1e-14)
    assert c.mu_seen == pytest.approx(0.483673350, abs=1e-9)
    assert c.affine_shift_uniform == pytest.approx(1 / (4 - 2 * math.exp(2 - 2 * c.vartheta)), abs=1e-15)
