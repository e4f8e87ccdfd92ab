"""Tests for variance constants, auxiliary integrals and increment variances."""

import math

import numpy as np
import pytest
from scipy import integrate

from fracspde.errors import CancelledError, DivergenceError, DomainError, RegimeError, UnsupportedParameterError
from fracspde.kernel.params import EquationParams
from fracspde.settings import ENGINE_CACHE_SIZE
from fracspde.solvability.params import NoiseParams
from fracspde.variance.balan import balan_A, balan_kernel, balan_N
from fracspde.variance.constants import k_closed_form, k_constant, second_moment
from fracspde.variance.engine import CovarianceEngine, _shared_engine, covariance_engine
from fracspde.variance.increments import Axis, increment_variance
from fracspde.variance.mittag_integrals import (
    ml_power_time_bound,
    ml_power_time_integral,
    ml_product,
    ml_product_bound,
    ml_product_integral,
)
from fracspde.variance.oscillatory import oscillatory_tail, oscillatory_tail_bound, trig_integral_F
from fracspde.variance.params import CancellationToken, Method, OscillationMode, QuadratureSpec


def eq(alpha, beta, gamma=0.0, d=1, nu=2.0):
    return EquationParams(alpha=alpha, beta=beta, gamma=gamma, nu=nu, d=d)


def slope(lags, values):
    return np.polyfit(np.log(lags), np.log(values), 1)[0]


# K constant


def test_k_wave_white_noise(wave_params, white_noise):
    closed = k_constant(wave_params, white_noise)
    assert closed.case_tag == "K-2"
    assert closed.value == pytest.approx(math.pi**2, rel=1e-12)
    oracle = k_constant(wave_params, white_noise, Method.QUADRATURE)
    assert oracle.value == pytest.approx(math.pi**2, rel=1e-6)
    assert not oracle.fallback


def test_k_stochastic_heat(heat_params, white_noise):
    closed = k_constant(heat_params, white_noise)
    assert closed.case_tag == "K+1"
    assert closed.value == pytest.approx(2.0 * math.sqrt(2.0) * math.pi**1.5, rel=1e-12)
    assert closed.value == pytest.approx(15.749, abs=1e-3)
    assert k_constant(heat_params, white_noise, "quadrature").value == pytest.approx(closed.value, rel=1e-6)


@pytest.mark.parametrize(
    "p, n, tag",
    [
        (eq(2.0, 1.0), NoiseParams(H=0.7, ell=1.0), "K-0"),
        (eq(1.5, 1.0), NoiseParams(H=0.5, ell=0.6), "K+1"),
        (eq(2.0, 2.0), NoiseParams(H=0.5, ell=0.5), "K-1"),
        (eq(2.0, 2.0, nu=1.0), NoiseParams(H=0.5, ell=1.3), "K-1"),
    ],
)
def test_k_closed_form_matches_quadrature(p, n, tag):
    closed = k_constant(p, n)
    assert closed.case_tag == tag
    assert closed.value > 0.0
    assert k_constant(p, n, Method.QUADRATURE).value == pytest.approx(closed.value, rel=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize(
    "p, n, tag",
    [
        (eq(2.0, 2.0), NoiseParams(H=0.7, ell=0.5), "K-3"),
        (eq(2.0, 2.0), NoiseParams(H=0.7, ell=1.0), "K-4"),
        (eq(2.0, 2.0, d=2), NoiseParams(H=0.7, ell=2.0), "K-5"),
    ],
)
def test_k_wave_fractional_cases_match_quadrature(p, n, tag):
    closed = k_constant(p, n)
    assert closed.case_tag == tag
    assert k_constant(p, n, Method.QUADRATURE).value == pytest.approx(closed.value, rel=1e-6)


@pytest.mark.parametrize(
    "p, ell",
    [
        (eq(2.0, 2.0), 0.5),  # K-3 to K-1
        (eq(2.0, 2.0), 1.0),  # K-4 to K-2
        (eq(2.0, 1.0), 1.0),  # K-0 to K+1
    ],
)
def test_k_limits_as_hurst_decreases(p, ell):
    near, _ = k_closed_form(p, NoiseParams(H=0.5 + 1e-5, ell=ell))
    at_half, _ = k_closed_form(p, NoiseParams(H=0.5, ell=ell))
    assert near == pytest.approx(at_half, rel=1e-4)


def test_k_limit_towards_half_alpha():
    p = eq(2.0, 2.0)
    near, tag = k_closed_form(p, NoiseParams(H=0.5, ell=1.0 - 1e-6))
    assert tag == "K-1"
    assert near == pytest.approx(math.pi**2, rel=1e-4)


def test_k_fallback_without_closed_form(white_noise):
    result = k_constant(eq(2.0, 1.5), white_noise)
    assert result.fallback
    assert result.method is Method.QUADRATURE
    assert result.case_tag is None
    assert result.value > 0.0
    assert result.to_dict()["method"] == "quadrature"


def test_k_unsolvable_raises(wave_params):
    with pytest.raises(RegimeError):
        k_constant(wave_params, NoiseParams(H=0.5, ell=1.5))


def test_second_moment_scaling(heat_params, white_noise):
    assert second_moment(heat_params, white_noise, 4.0) == pytest.approx(2.0 * 15.7496, rel=1e-4)
    with pytest.raises(DomainError):
        second_moment(heat_params, white_noise, 0.0)


# trigonometric integrals


@pytest.mark.parametrize(
    "theta, s1, s2, expected",
    [
        (-2.0, 2.0, 2.0, math.pi),
        (-1.0, 1.0, 2.0, 0.5 * math.log(3.0)),
        (-1.5, 1.0, 1.0, math.sqrt(math.pi)),
    ],
)
def test_trig_integral_examples(theta, s1, s2, expected):
    assert trig_integral_F(theta, s1, s2) == pytest.approx(expected, rel=1e-12)
    assert trig_integral_F(theta, s1, s2, Method.QUADRATURE) == pytest.approx(expected, rel=1e-6)


@pytest.mark.parametrize("theta", [-2.5, -2.0, -1.5, -1.0, -0.5])
@pytest.mark.parametrize("s1, s2", [(1.0, 2.0), (0.5, 3.0), (2.0, 2.5)])
def test_trig_closed_form_matches_oracle(theta, s1, s2):
    closed = trig_integral_F(theta, s1, s2)
    assert closed >= 0.0
    assert trig_integral_F(theta, s1, s2, Method.QUADRATURE) == pytest.approx(closed, rel=1e-6)
    assert trig_integral_F(theta, s2, s1) == closed


@pytest.mark.parametrize("theta", [-2.5, -2.0, -1.5, -1.2])
def test_trig_diagonal_matches_oracle(theta):
    plain = QuadratureSpec(oscillation_mode=OscillationMode.PLAIN_ADAPTIVE)
    closed = trig_integral_F(theta, 1.5, 1.5)
    assert trig_integral_F(theta, 1.5, 1.5, Method.QUADRATURE, plain) == pytest.approx(closed, rel=1e-6)


def test_trig_divergence_windows():
    for theta in (-3.0, 0.0):
        with pytest.raises(DivergenceError):
            trig_integral_F(theta, 1.0, 2.0)
    with pytest.raises(DivergenceError):
        trig_integral_F(-1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        trig_integral_F(-1.5, 0.0, 1.0)


@pytest.mark.parametrize("theta", [-2.5, -1.0, -0.1])
def test_oscillatory_tail_bounded_by_power(theta):
    for t in (0.1, 1.0, 10.0, 100.0):
        envelope, second = oscillatory_tail_bound(theta, t)
        assert second > 0.0
        for zeta in (0.0, 1.0, 2.5):
            assert abs(oscillatory_tail(theta, t, zeta)) < 5.0 * envelope


def test_oscillatory_tail_exact_value():
    # the reference stops at a multiple of 2 pi, where the truncated tail is O(X^-3)
    value = oscillatory_tail(-2.0, math.pi, 0.0)
    reference, _ = integrate.quad(lambda x: math.cos(x) / x**2, math.pi, 2000.0 * math.pi, limit=4000)
    assert value == pytest.approx(reference, abs=1e-6)
    with pytest.raises(DivergenceError):
        oscillatory_tail(0.0, 1.0, 0.0)


# Mittag-Leffler product and time integrals


def test_ml_product_exponential_examples():
    assert ml_product_integral(1.0, 1.0, 0.0, 1.0, 1.0) == pytest.approx(0.5, rel=1e-10)
    assert ml_product_integral(1.0, 1.0, -0.5, 1.0, 1.0) == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-10)


@pytest.mark.parametrize("theta", [-0.5, 0.0, 0.5])
def test_ml_product_general_bound_shape(theta):
    ratios = []
    for s1 in np.logspace(-3, 0, 4):
        for s2 in np.logspace(0, 3, 4):
            value = ml_product_integral(1.0, 1.0, theta, s1, s2)
            assert value == pytest.approx(math.gamma(1.0 + theta) * (s1 + s2) ** (-1.0 - theta), rel=1e-8)
            ratios.append(value / ml_product_bound(1.0, 1.0, theta, s1, s2))
    assert max(ratios) < 10.0


def test_ml_product_pure_wave():
    # E_{2,2}(-y^2) = sin(y)/y, so the integral is 2 int sin^2 y / y^2 dy
    assert ml_product(2.0, 2.0, 2.0, -0.5, 1.0, 1.0) == pytest.approx(math.pi, rel=1e-6)
    with pytest.raises(UnsupportedParameterError):
        ml_product_integral(2.0, 2.0, -0.5, 1.0, 1.0)


def test_ml_product_wave_family_bounded_ratio():
    value = ml_product_integral(2.0, 2.5, 0.2, 0.1, 1.0)
    bound = ml_product_bound(2.0, 2.5, 0.2, 0.1, 1.0)
    assert math.isfinite(value)
    assert 0.0 < abs(value) / bound < 100.0


def test_ml_time_integral_examples():
    assert ml_power_time_integral(1.0, 1.0, 0.5, 1.0, 1.0) == pytest.approx((1.0 - math.exp(-2.0)) / 2.0, rel=1e-10)
    expected = 2.0**2.0 * 0.5 / 1.0 * (1.0 / math.gamma(1.5)) ** 2.0
    # theta_b = 1.5, H = 0.5: total power 2, coefficient H / (theta_b + H - 1)
    assert ml_power_time_integral(1.0, 1.5, 0.5, 0.0, 2.0) == pytest.approx(expected, rel=1e-12)


def test_ml_time_integral_bound_ratio():
    value = ml_power_time_integral(0.8, 1.2, 0.6, 10.0, 2.0)
    ratio = value / ml_power_time_bound(0.8, 1.2, 0.6, 10.0, 2.0)
    assert 0.0 < ratio < 100.0
    with pytest.raises(DomainError):
        ml_power_time_integral(1.0, 0.4, 0.5, 1.0, 1.0)
    with pytest.raises(UnsupportedParameterError):
        ml_power_time_bound(2.0, 1.5, 0.6, 1.0, 1.0)


# noise energy of a localised wave


def test_balan_full_periods():
    z = 2.0 * math.pi
    assert balan_N(2.0, 0.0, 0.5, 1.0, z) == pytest.approx(math.pi / z**2, rel=1e-6)


@pytest.mark.parametrize("H", [0.5, 0.7])
def test_balan_sandwich(H):
    ratios = [balan_A(0.0, H, 1.0, a) / balan_kernel(H, 1.0, a) for a in np.logspace(-2, 2, 9)]
    assert min(ratios) > 0.0
    assert max(ratios) / min(ratios) < 100.0


def test_balan_kernel_closed_form():
    H, t, a = 0.7, 1.3, 2.0
    m2 = a * a + t * t
    integral, _ = integrate.quad(lambda tau: 2.0 * (tau / t) ** (1.0 - 2.0 * H) / (tau * tau + m2), 0.0, math.inf)
    assert balan_kernel(H, t, a) == pytest.approx(integral / (t * math.sqrt(m2)), rel=1e-7)


# increment variances


def test_increment_identical_points(heat_params, white_noise):
    assert increment_variance(heat_params, white_noise, (1.0, 0.0), (1.0, 0.0), Axis.TIME) == 0.0
    assert increment_variance(heat_params, white_noise, (1.0, 0.3), (1.0, 0.3), Axis.SPACE) == 0.0


def test_increment_axis_mismatch(heat_params, white_noise):
    with pytest.raises(DomainError):
        increment_variance(heat_params, white_noise, (1.0, 0.0), (0.5, 0.2), Axis.TIME)
    with pytest.raises(DomainError):
        increment_variance(heat_params, white_noise, (1.0, 0.0), (0.5, 0.0), "space")


@pytest.mark.parametrize("H", [0.5, 0.7])
def test_increment_from_zero_is_second_moment(heat_params, H):
    n = NoiseParams(H=H, ell=1.0)
    k = k_constant(heat_params, n)
    for t in (0.5, 1.0, 2.0):
        value = increment_variance(heat_params, n, (t, 0.0), (0.0, 0.0), Axis.TIME)
        assert value == pytest.approx(k.value * t ** (2.0 * k.rho0), rel=1e-5)


def test_heat_time_increment_slope(heat_params, white_noise):
    lags = 2.0 ** np.arange(-10, -3)
    values = [increment_variance(heat_params, white_noise, (1.0, 0.0), (1.0 - h, 0.0)) for h in lags]
    assert slope(lags, values) == pytest.approx(0.5, abs=0.05)


def test_heat_space_increment_slope(heat_params, white_noise):
    lags = 2.0 ** np.arange(-10, -3)
    values = [increment_variance(heat_params, white_noise, (1.0, 0.0), (1.0, h), Axis.SPACE) for h in lags]
    assert slope(lags, values) == pytest.approx(1.0, abs=0.05)


@pytest.mark.slow
def test_wave_time_increment_slope(wave_params, white_noise):
    lags = 2.0 ** np.arange(-10, -3)
    values = [increment_variance(wave_params, white_noise, (1.0, 0.0), (1.0 - h, 0.0)) for h in lags]
    assert slope(lags, values) == pytest.approx(1.0, abs=0.05)


def test_profile_route_matches_second_moment(heat_params, white_noise):
    engine = covariance_engine(heat_params, white_noise)
    assert engine.profile_variance(1.0) == pytest.approx(engine.variance(1.0), rel=1e-6)
    assert engine.variance(1.0) == pytest.approx(k_constant(heat_params, white_noise).value, rel=1e-6)


def test_time_covariance_is_symmetric_and_bounded(heat_params, white_noise):
    engine = covariance_engine(heat_params, white_noise)
    c = engine.time_covariance(1.0, 0.6)
    assert c == pytest.approx(engine.time_covariance(0.6, 1.0), rel=1e-12)
    assert 0.0 < c < math.sqrt(engine.variance(1.0) * engine.variance(0.6))


def test_space_covariance_requires_supported_dimension():
    p = eq(2.0, 1.0, d=2)
    engine = CovarianceEngine(p, NoiseParams(H=0.5, ell=1.0))
    with pytest.raises(UnsupportedParameterError):
        engine.space_covariance(1.0, 0.5)


def test_engine_is_cancellable(heat_params):
    token = CancellationToken()
    token.cancel()
    q = QuadratureSpec(rel_tol=1e-9, cancel=token)
    with pytest.raises(CancelledError):
        CovarianceEngine(heat_params, NoiseParams(H=0.6, ell=1.0), q).variance(1.0)


def test_engines_are_shared_and_bounded(heat_params, white_noise):
    assert covariance_engine(heat_params, white_noise) is covariance_engine(heat_params, white_noise)
    for k in range(ENGINE_CACHE_SIZE + 4):
        covariance_engine(eq(2.0, 1.0, nu=1.0 + 0.1 * k), white_noise)
    info = _shared_engine.cache_info()
    assert info.maxsize == ENGINE_CACHE_SIZE
    assert info.currsize <= ENGINE_CACHE_SIZE
