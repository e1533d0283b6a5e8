import math

import mpmath as mp
import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from rieszfact.specfun import (
    BesselOrder,
    BesselPolicy,
    HypParams,
    SpecialFunctionError,
    bessel_j,
    bessel_j_derivative,
    bessel_j_zero,
    bessel_j_zeros,
    bessel_j_zeros_below,
    digamma,
    gegenbauer,
    gegenbauer_coeffs,
    hankel_bessel_j,
    hyp1f2,
    hyp2f1,
    hyp_series,
    laguerre,
    laguerre_coeffs,
    log_gamma,
    pochhammer,
    sphere_area_log,
)


def test_log_gamma_examples():
    assert log_gamma(1) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(0.5) == pytest.approx(0.5723649429, abs=1e-10)
    assert log_gamma(10) == pytest.approx(math.log(362880), rel=1e-14)


def test_log_gamma_rejects_non_positive():
    with pytest.raises(SpecialFunctionError):
        log_gamma(0.0)
    with pytest.raises(SpecialFunctionError):
        log_gamma(-2.5)


@given(st.floats(1e-3, 1e6))
def test_log_gamma_matches_scipy(x):
    assert log_gamma(x) == pytest.approx(float(sc.gammaln(x)), rel=1e-13, abs=1e-13)


def test_pochhammer_examples():
    assert pochhammer(3, 0) == 1
    assert pochhammer(3, 2) == 12
    assert pochhammer(0.5, 3) == pytest.approx(1.875, rel=1e-15)


@given(st.floats(0.01, 50), st.integers(0, 40))
def test_pochhammer_is_gamma_ratio(a, n):
    expected = math.exp(math.lgamma(a + n) - math.lgamma(a))
    assert pochhammer(a, n) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 3.7, 25.0, 1e4, -0.5, -2.3])
def test_digamma_against_scipy(x):
    assert digamma(x) == pytest.approx(float(sc.digamma(x)), rel=1e-13, abs=1e-14)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 10, 64])
def test_sphere_area(d):
    assert math.exp(sphere_area_log(d)) == pytest.approx(2 * math.pi ** (d / 2) / math.gamma(d / 2), rel=1e-13)


# Bessel J ------------------------------------------------------------------


def test_bessel_examples():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(0.5, math.pi / 2) == pytest.approx(2 / math.pi, abs=1e-12)
    assert abs(bessel_j(0, 2.404825557695773)) <= 1e-10


@pytest.mark.parametrize("nu", [0, 0.5, 1, 2.5, 7, 11.5, 25, 40, 80])
def test_bessel_against_scipy_on_wide_range(nu):
    x = np.concatenate([np.linspace(0, 200, 2001), np.geomspace(200, 8000, 400)])
    ours = bessel_j(nu, x)
    assert np.max(np.abs(ours - sc.jv(nu, x))) <= 1e-11


@settings(max_examples=200)
@given(st.floats(0, 80), st.floats(0, 200))
def test_bessel_absolute_accuracy(nu, x):
    # mpmath rather than scipy: scipy flushes J_nu at subnormal x to zero
    assert abs(bessel_j(nu, x) - float(mp.besselj(nu, x))) <= 1e-11


def test_bessel_regimes_meet_continuously():
    pol = BesselPolicy()
    for nu in (3.0, 20.0, 60.0):
        edges = [max(pol.series_max, 2 * math.sqrt(nu + 1)), max(pol.hankel_min, pol.hankel_nu2 * nu * nu)]
        for e in edges:
            x = np.array([e * (1 - 1e-12), e * (1 + 1e-12)])
            left, right = bessel_j(nu, x)
            assert abs(left - right) <= 5e-11


def test_bessel_policy_is_configurable():
    # stretching the power series to x = 20 costs digits to cancellation
    wide = BesselPolicy(series_max=30.0)
    exact = float(sc.jv(2, 20.0))
    assert bessel_j(2, 20.0, wide) == pytest.approx(exact, abs=1e-8)
    assert bessel_j(2, 20.0, wide) != bessel_j(2, 20.0)
    assert bessel_j(2, 20.0) == pytest.approx(exact, abs=1e-13)


def test_bessel_rejects_large_order_and_negative():
    with pytest.raises(SpecialFunctionError):
        bessel_j(81, 1.0)
    with pytest.raises(SpecialFunctionError):
        BesselOrder(-0.5)
    with pytest.raises(SpecialFunctionError):
        BesselOrder(float("nan"))


def test_hankel_handles_negative_orders():
    x = np.array([60.0, 150.0, 900.0])
    for nu in (-0.5, -3.5, -7.0):
        assert np.max(np.abs(hankel_bessel_j(nu, x) - sc.jv(nu, x))) <= 1e-13


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("s", [1.0, 5.0, 10.0])
def test_power_bessel_derivative_identity(d, s):
    h = 1e-5
    g = lambda u: u ** (d / 2) * bessel_j(d / 2, u)  # noqa: E731
    fd = (g(s + h) - g(s - h)) / (2 * h)
    assert fd == pytest.approx(s ** (d / 2) * bessel_j(d / 2 - 1, s), abs=1e-6)


def test_bessel_derivative_against_scipy():
    x = np.linspace(0.5, 300, 500)
    for nu in (0, 1.5, 12, 80):
        assert np.max(np.abs(bessel_j_derivative(nu, x) - sc.jvp(nu, x))) <= 1e-11


# zeros ----------------------------------------------------------------------


def test_zero_examples():
    assert bessel_j_zero(0, 1) == pytest.approx(2.404825557695773, abs=1e-11)
    for n in range(1, 8):
        assert bessel_j_zero(0.5, n) == pytest.approx(n * math.pi, abs=1e-11)


@pytest.mark.parametrize("nu", [0, 1, 2.5, 9.5, 17, 40.5])
def test_zeros_against_mpmath(nu):
    zs = bessel_j_zeros(nu, 12)
    ref = [float(mp.besseljzero(mp.mpf(nu), n)) for n in range(1, 13)]
    assert np.max(np.abs(zs - ref)) <= 1e-11


@pytest.mark.parametrize("nu", [1, 2])
def test_zero_interlacing(nu):
    a = bessel_j_zeros(nu, 6)
    b = bessel_j_zeros(nu + 1, 5)
    for n in range(5):
        assert a[n] < b[n] < a[n + 1]


@pytest.mark.parametrize("nu", [0.5, 3, 12.5])
def test_zeros_are_sign_changes(nu):
    eps = 1e-6
    for z in bessel_j_zeros(nu, 10):
        assert bessel_j(nu, z - eps) * bessel_j(nu, z + eps) < 0


def test_zeros_below_is_consistent_prefix():
    nu = 4.5
    below = bessel_j_zeros_below(nu, 100.0)
    assert below[-1] <= 100.0
    assert bessel_j_zero(nu, len(below) + 1) > 100.0
    assert np.array_equal(below, bessel_j_zeros(nu, len(below)))


def test_zero_index_must_be_positive():
    with pytest.raises(SpecialFunctionError):
        bessel_j_zero(1, 0)


def test_zero_cache_is_immutable():
    zs = bessel_j_zeros(2, 5)
    with pytest.raises(ValueError):
        zs[0] = 1.0


# hypergeometric ------------------------------------------------------------


def test_hyp_series_examples():
    assert hyp_series(HypParams((2.5, 0), (1.5,), 0.7)).value == 1.0
    assert hyp_series(HypParams((3, -1), (2,), 1.0)).value == pytest.approx(-0.5, abs=1e-15)
    r = hyp_series(HypParams((1, 1), (2,), 0.5))
    assert r.value == pytest.approx(2 * math.log(2), rel=1e-14)
    assert r.error < 1e-13


def test_hyp_params_flags():
    assert HypParams((-3, 2), (1,), 0.4).terminating
    assert not HypParams((0.5, 2), (1,), 0.4).terminating
    with pytest.raises(SpecialFunctionError):
        HypParams((1, 1), (-2,), 0.1)
    HypParams((-1, 1), (-2,), 0.1)  # terminates before the pole


def test_hyp_series_rejects_divergent():
    with pytest.raises(SpecialFunctionError):
        hyp_series(HypParams((0.5, 0.5), (1,), 1.2))
    with pytest.raises(SpecialFunctionError):
        hyp_series(HypParams((0.5, 0.5, 1), (1,), 0.1))


@given(st.integers(1, 12), st.floats(-5, 5), st.floats(0.5, 10), st.floats(-0.99, 0.99))
def test_terminating_2f1_equals_explicit_sum(m, b, c, x):
    expected = math.fsum(pochhammer(-m, n) * pochhammer(b, n) / (pochhammer(c, n) * math.factorial(n)) * x**n
                         for n in range(m + 1))
    got = hyp_series(HypParams((-m, b), (c,), x)).value
    scale = max(1.0, max(abs(pochhammer(-m, n) * pochhammer(b, n) / (pochhammer(c, n) * math.factorial(n)))
                         for n in range(m + 1)))
    assert abs(got - expected) <= 1e-14 * scale


def test_cancellation_flag_for_alternating_1f2():
    r = hyp_series(HypParams((1.5,), (4.0, 2.5), -400.0))
    assert r.cancelled
    _, ratio = hyp1f2(1.5, 4.0, 2.5, -400.0)
    assert ratio[0] > 1e12


@pytest.mark.parametrize("k,d", [(1, 2), (3, 3), (5, 8), (8, 20), (3, 64)])
def test_hyp2f1_kernel_parameters_against_mpmath(k, d):
    # both radial branches, including the logarithmic region next to x = 1
    x = np.concatenate([np.linspace(0, 0.95, 20), 1 - np.geomspace(1e-2, 1e-12, 12)])
    for a, b, c in [((d + k) / 2, 1 - k / 2, d / 2 + 1), ((d + k) / 2, k / 2, d / 2 + k)]:
        ours = hyp2f1(a, b, c, x)
        ref = np.array([float(mp.hyp2f1(a, b, c, v)) for v in x])
        assert np.max(np.abs(ours - ref) / np.maximum(1, np.abs(ref))) <= 1e-12


def test_hyp2f1_rejects_non_terminating_at_one():
    with pytest.raises(SpecialFunctionError):
        hyp2f1(1.5, 0.5, 2.0, 1.0)


def test_hyp1f2_against_mpmath():
    x = np.array([0.0, -0.3, -4.0, -30.0, 2.0])
    val, _ = hyp1f2(1.5, 3.5, 2.5, x)
    ref = [float(mp.hyp1f2(1.5, 3.5, 2.5, v)) for v in x]
    assert np.allclose(val, ref, rtol=1e-13, atol=1e-15)


# orthogonal polynomials -----------------------------------------------------


def test_laguerre_examples():
    assert laguerre(0, 3.3) == 1.0
    assert laguerre(1, 2.5) == pytest.approx(-1.5)
    assert laguerre(2, 2.0) == pytest.approx(-1.0, abs=1e-15)


@given(st.integers(0, 15), st.floats(0, 30))
def test_laguerre_matches_coefficients_and_scipy(n, s):
    # the monomial form is ill-conditioned for large s: allow eps times its condition sum
    coeffs = np.asarray(laguerre_coeffs(n))
    from_coeffs = np.polynomial.polynomial.polyval(s, coeffs)
    cond = np.polynomial.polynomial.polyval(s, np.abs(coeffs))
    assert abs(laguerre(n, s) - from_coeffs) <= 1e-13 * cond + 1e-12
    assert laguerre(n, s) == pytest.approx(float(sc.eval_laguerre(n, s)), rel=1e-10, abs=1e-10)


def test_gegenbauer_examples():
    assert gegenbauer(0, 1.7, 0.3) == 1.0
    assert gegenbauer(1, 1.7, 0.3) == pytest.approx(2 * 1.7 * 0.3)
    # C_2^1(t) = 4t^2 - 1 vanishes at t = 1/2
    assert gegenbauer(2, 1.0, 0.5) == pytest.approx(0.0, abs=1e-15)


@given(st.integers(0, 10), st.floats(-0.45, 6), st.floats(-1, 1))
def test_gegenbauer_recurrence_matches_explicit_expansion(n, lam, t):
    explicit = sum(c * t**p for p, c in gegenbauer_coeffs(n, lam))
    assert gegenbauer(n, lam, t) == pytest.approx(explicit, rel=1e-10, abs=1e-10)
    assert gegenbauer(n, lam, t) == pytest.approx(float(sc.eval_gegenbauer(n, lam, t)), rel=1e-9, abs=1e-9)


def test_orthogonal_polynomial_domains():
    with pytest.raises(SpecialFunctionError):
        laguerre(-1, 0.0)
    with pytest.raises(SpecialFunctionError):
        gegenbauer(2, -0.5, 0.1)
