import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niwmap.errors import DomainError
from niwmap.special import (
    digamma,
    digamma_sum,
    log_gamma,
    multivariate_log_gamma,
    trigamma,
    trigamma_sum,
)

EULER_GAMMA = 0.57721566490153286061

# (x, log_gamma, digamma, trigamma) from mpmath at 30 digits
REFERENCE = [
    (0.5, 0.57236494292470008707, -1.9635100260214234794, 4.9348022005446793094),
    (1.0, 0.0, -0.57721566490153286061, 1.6449340668482264365),
    (1.5, -0.12078223763524522235, 0.036489973978576520559, 0.93480220054467930942),
    (2.0, 0.0, 0.42278433509846713939, 0.64493406684822643647),
    (4.0, 1.7917594692280550008, 1.2561176684318004727, 0.28382295573711532536),
    (0.25, 1.2880225246980774574, -4.2274535333762654081, 17.197329154507110739),
    (7.3, 7.1478925230222486921, 1.9178203356379860723, 0.14679576813142710199),
    (50.0, 144.56574394634488601, 3.901989673427892197, 0.020201333226697125806),
    (1e-3, 6.9071788853838536617, -1000.5755719318102797, 1000001.6425331958273),
    (1e6, 12815504.56914761166, 13.815510057964190771, 1.0000005000001666667e-6),
]


@pytest.mark.parametrize("x, lg, dg, tg", REFERENCE)
def test_reference_values(x, lg, dg, tg):
    def close(a, b):
        assert abs(a - b) <= 1e-12 * max(1.0, abs(b))

    close(log_gamma(x), lg)
    close(digamma(x), dg)
    close(trigamma(x), tg)


def test_closed_forms():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert log_gamma(4.0) == pytest.approx(math.log(6.0), abs=1e-14)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), abs=1e-14)
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-14)
    assert digamma(2.0) == pytest.approx(1.0 - EULER_GAMMA, abs=1e-14)
    assert digamma(1.5) == pytest.approx(2.0 - EULER_GAMMA - 2.0 * math.log(2.0), abs=1e-14)
    assert trigamma(1.0) == pytest.approx(math.pi**2 / 6, abs=1e-14)
    assert trigamma(0.5) == pytest.approx(math.pi**2 / 2, abs=1e-14)
    assert trigamma(2.0) == pytest.approx(math.pi**2 / 6 - 1, abs=1e-14)


def test_against_mpmath_on_log_grid():
    xs = np.geomspace(1e-3, 1e6, 400)
    for x in xs:
        mx = mpmath.mpf(float(x))
        for ours, ref in ((log_gamma, mpmath.loggamma), (digamma, mpmath.digamma), (trigamma, lambda t: mpmath.psi(1, t))):
            expected = float(ref(mx))
            assert abs(ours(x) - expected) <= 1e-12 * max(1.0, abs(expected)), (ours.__name__, x)


@pytest.mark.parametrize("f", [log_gamma, digamma, trigamma])
@pytest.mark.parametrize("x", [0.0, -1.0, float("nan"), float("inf")])
def test_domain_errors(f, x):
    with pytest.raises(DomainError):
        f(x)


def test_multivariate_log_gamma():
    assert multivariate_log_gamma(1.0, 1) == pytest.approx(0.0, abs=1e-14)
    assert multivariate_log_gamma(1.5, 2) == pytest.approx(math.log(math.pi / 2), abs=1e-14)
    with pytest.raises(DomainError):
        multivariate_log_gamma(0.4, 2)
    from scipy.special import multigammaln

    for a, d in [(3.0, 3), (2.6, 5), (10.25, 4)]:
        assert multivariate_log_gamma(a, d) == pytest.approx(multigammaln(a, d), rel=1e-13)


def test_digamma_sum():
    assert digamma_sum(3.0, 1) == pytest.approx(0.036489973978576520559, abs=1e-13)
    assert digamma_sum(4.0, 2) == pytest.approx(0.45927430907704365995, abs=1e-13)
    with pytest.raises(DomainError):
        digamma_sum(1.0, 2)


def test_trigamma_sum():
    assert trigamma_sum(2.0, 1) == pytest.approx(1.6449340668482264365, abs=1e-13)
    assert trigamma_sum(3.0, 2) == pytest.approx(0.93480220054467930942 + 1.6449340668482264365, abs=1e-13)
    assert trigamma_sum(0.5, 1) == pytest.approx(17.197329154507110739, abs=1e-11)
    with pytest.raises(DomainError):
        trigamma_sum(1.0, 2)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 7.3, 50.0])
def test_recurrences(x):
    assert digamma(x + 1) - digamma(x) == pytest.approx(1.0 / x, abs=1e-11)
    assert trigamma(x + 1) - trigamma(x) == pytest.approx(-1.0 / x**2, abs=1e-11)


@settings(max_examples=200, deadline=None)
@given(x=st.floats(0.05, 500.0))
def test_derivative_consistency(x):
    h = 1e-5 * max(1.0, x)
    assert digamma(x) == pytest.approx((log_gamma(x + h) - log_gamma(x - h)) / (2 * h), rel=1e-6, abs=1e-6)
    assert trigamma(x) == pytest.approx((digamma(x + h) - digamma(x - h)) / (2 * h), rel=1e-6, abs=1e-6)


GRID = np.geomspace(0.05, 100.0, 200)


def test_polygamma_bounds_on_grid():
    for x in GRID:
        assert trigamma(x) >= (x + 0.5) / x**2
        h = 1e-5 * x
        slope = (trigamma(x + h) - trigamma(x - h)) / (2 * h)
        assert slope <= -1.0 / x**2 - 1.0 / x**3 + 1e-6
        assert digamma(x) < math.log(x)
