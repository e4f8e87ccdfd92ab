"""Tests for the fundamental-solution kernels."""

import math

import numpy as np
import pytest

from fracspde.errors import UnsupportedParameterError
from fracspde.kernel.asymptote import AsymptoteForm, infinity_asymptote
from fracspde.kernel.expansion import ARITHMETIC, GENERIC, origin_expansion
from fracspde.kernel.green import green_function, kernel_profile, profile_constants, scaled_green_function
from fracspde.kernel.params import EquationParams, KernelKind, fox_h_parameters
from fracspde.kernel.symbols import fourier_kernel
from fracspde.specfun.mittag_leffler import ml_eval


def heat_kernel(t, r, d=1):
    return (4 * math.pi * t) ** (-d / 2) * math.exp(-r * r / (4 * t))


# Parameters


def test_equation_params_validation():
    with pytest.raises(ValueError):
        EquationParams(alpha=2.0, beta=2.5)
    with pytest.raises(ValueError):
        EquationParams(alpha=-1.0, beta=1.0)
    with pytest.raises(ValueError):
        EquationParams(alpha=1.5, beta=1.0, alpha_ratio=(5, 3))
    p = EquationParams(alpha=1.5, beta=1.0, alpha_ratio=(3, 2))
    assert p.alpha_fraction.numerator == 3
    assert EquationParams.parse_alpha("3/2") == (1.5, (3, 2))
    assert EquationParams.parse_alpha("1.25") == (1.25, None)


def test_fox_h_parameters():
    assert fox_h_parameters(EquationParams(alpha=2.0, beta=2.0)).delta == pytest.approx(0.5)
    assert fox_h_parameters(EquationParams(alpha=3.0, beta=2.0)).a_star == 0.0
    for beta in (0.3, 1.0, 1.7):
        h = fox_h_parameters(EquationParams(alpha=2.0, beta=beta, gamma=0.4, d=2))
        assert h.delta == pytest.approx(2 * beta**-beta)
        assert h.delta_cap == pytest.approx(2.0 - beta)
        assert h.mu == pytest.approx(1.5 - beta - 0.4)


# Fourier symbols


def test_fourier_kernel_examples(heat_params, wave_params):
    assert fourier_kernel(KernelKind.Y, heat_params, 1.0, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-14)
    assert abs(fourier_kernel("Zstar", wave_params, 1.0, math.pi)) < 1e-15

    p = EquationParams(alpha=1.3, beta=0.7, gamma=0.4, nu=1.5, d=2)
    assert fourier_kernel("Y", p, 2.0, 0.0) == pytest.approx(2.0**0.1 / math.gamma(1.1), rel=1e-14)


def test_fourier_kernel_zstar_requires_beta_above_one(heat_params):
    with pytest.raises(UnsupportedParameterError):
        fourier_kernel(KernelKind.ZSTAR, heat_params, 1.0, 1.0)


@pytest.mark.parametrize("beta", [1.3, 1.7, 2.0])
def test_symbol_time_derivatives(beta):
    # d/dt Z* = E_{beta,1}(w) and d2/dt2 Z* = lam Y when gamma = 0, lam = -nu r^alpha / 2
    p = EquationParams(alpha=1.6, beta=beta, gamma=0.0, nu=1.2, d=1)
    for r in (0.4, 1.1):
        lam = -0.5 * p.nu * r**p.alpha
        for t in (0.5, 1.5):
            zstar = [fourier_kernel("Zstar", p, t + k * 1e-3, r) for k in (-1, 0, 1)]
            first = (zstar[2] - zstar[0]) / 2e-3
            second = (zstar[2] - 2 * zstar[1] + zstar[0]) / 1e-6
            assert first == pytest.approx(ml_eval(beta, 1.0, lam * t**beta), rel=1e-5, abs=1e-6)
            assert second == pytest.approx(lam * fourier_kernel("Y", p, t, r), rel=1e-5, abs=1e-6)
            assert fourier_kernel("Z", p, t, r) == zstar[1]


# Physical space


@pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 3.0, 6.0])
def test_green_function_heat_kernel(heat_params, r):
    assert green_function(heat_params, 1.0, r) == pytest.approx(heat_kernel(1.0, r), rel=1e-6)


@pytest.mark.parametrize("r", [0.5, 2.0])
def test_green_function_heat_kernel_three_dimensions(r):
    p = EquationParams(alpha=2.0, beta=1.0, gamma=0.0, nu=2.0, d=3)
    assert green_function(p, 0.7, r) == pytest.approx(heat_kernel(0.7, r, d=3), rel=1e-6)


def test_green_function_radial_symmetry():
    p = EquationParams(alpha=1.5, beta=1.0, gamma=0.3, nu=1.0, d=1)
    assert green_function(p, 1.0, -1.3) == green_function(p, 1.0, 1.3)


def test_green_function_unsupported_inputs(wave_params):
    with pytest.raises(UnsupportedParameterError):
        green_function(EquationParams(alpha=2.0, beta=1.0, d=2), 1.0, 1.0)
    with pytest.raises(UnsupportedParameterError):
        green_function(wave_params, 1.0, 1.0)


def test_green_function_singular_origin():
    p = EquationParams(alpha=0.8, beta=1.0, gamma=0.0, nu=1.0, d=1)
    assert math.isinf(green_function(p, 1.0, 0.0))


def test_green_function_positive_far_out():
    p = EquationParams(alpha=1.5, beta=1.0, gamma=0.0, nu=1.0, d=1)
    for r in (10.0, 30.0):
        assert green_function(p, 1.0, r) != 0.0


def _check_scaling(p):
    exponent = p.beta + p.gamma - 1 - p.d * p.beta / p.alpha
    for r in (2.0, 4.0):
        for s, y in [(0.5, 0.3), (1.0, 1.2), (1.7, 2.5)]:
            lhs = green_function(p, r * s, r ** (p.beta / p.alpha) * y)
            rhs = r**exponent * green_function(p, s, y)
            assert lhs == pytest.approx(rhs, rel=1e-6)


@pytest.mark.parametrize("alpha, beta, gamma", [(2.0, 1.0, 0.0), (3.0, 1.5, 0.0)])
def test_green_function_scaling(alpha, beta, gamma):
    _check_scaling(EquationParams(alpha=alpha, beta=beta, gamma=gamma, nu=2.0, d=1))


@pytest.mark.slow
def test_green_function_scaling_subdiffusive():
    _check_scaling(EquationParams(alpha=1.0, beta=0.5, gamma=0.5, nu=2.0, d=1))


def test_scaled_green_function_matches_direct():
    p = EquationParams(alpha=1.5, beta=1.0, gamma=0.2, nu=1.0, d=1)
    assert scaled_green_function(p, 2.5, 0.8) == pytest.approx(green_function(p, 2.5, 0.8), rel=1e-7)


def test_profile_constants_and_gaussian_profile(heat_params):
    c1, c2 = profile_constants(heat_params)
    assert c1 == pytest.approx(math.pi**-0.5)
    assert c2 == pytest.approx(0.25)
    # for the heat kernel f(z) = sqrt(z) exp(-z)
    for z in (0.3, 2.0):
        assert kernel_profile(heat_params, z) == pytest.approx(math.sqrt(z) * math.exp(-z), rel=1e-8)


# Origin expansion


def test_origin_expansion_gaussian_coefficients(heat_params):
    expansion = origin_expansion(heat_params, 12)
    assert expansion.regime == GENERIC
    first = [term for term in expansion.terms if term.source == "h1"]
    second = [term for term in expansion.terms if term.source == "h2"]
    for ell, term in enumerate(first):
        assert term.exponent == pytest.approx(0.5 + ell)
        assert term.coefficient == pytest.approx((-1) ** ell / math.factorial(ell), rel=1e-12)
    assert all(term.coefficient == 0.0 for term in second)
    z = 0.01
    assert expansion.evaluate(z) == pytest.approx(math.sqrt(z) * math.exp(-z), rel=1e-12)


def test_origin_expansion_terms_sorted():
    expansion = origin_expansion(EquationParams(alpha=1.3, beta=0.6, gamma=0.2, d=2), 15)
    keys = [term.sort_key() for term in expansion.terms]
    assert keys == sorted(keys)
    assert len(expansion.terms) == 15
    assert all(math.isfinite(term.coefficient) for term in expansion.terms)


def test_origin_expansion_second_series_vanishes_for_unit_beta():
    expansion = origin_expansion(EquationParams(alpha=math.sqrt(2), beta=1.0, gamma=0.0, d=1), 10)
    assert expansion.regime == GENERIC
    second = [term for term in expansion.terms if term.source == "h2"]
    assert second
    assert all(term.coefficient == 0.0 for term in second)


def test_origin_expansion_only_first_second_series_term_vanishes():
    expansion = origin_expansion(EquationParams(alpha=math.sqrt(3), beta=0.7, gamma=0.0, d=1), 10)
    second = {int(term.exponent) - 1: term.coefficient for term in expansion.terms if term.source == "h2"}
    assert second[0] == 0.0
    assert second[1] != 0.0


def test_origin_expansion_log_case():
    p = EquationParams(alpha=1.0, beta=0.5, gamma=0.5, d=1)
    expansion = origin_expansion(p, 6)
    assert expansion.regime == ARITHMETIC
    assert expansion.first_collision == (0, 0)
    assert expansion.tolerance_based
    assert expansion.log_coefficient() == pytest.approx(-2.0 / math.pi, rel=1e-12)
    assert 0 in expansion.excluded_indices["L1"]
    assert 0 in expansion.excluded_indices["L2"]

    exact = origin_expansion(p.model_copy(update={"alpha_ratio": (1, 1)}), 6)
    assert not exact.tolerance_based
    assert exact.log_coefficient() == pytest.approx(expansion.log_coefficient())


def test_origin_expansion_collision_beyond_search_bound():
    p = EquationParams(alpha=0.9, beta=0.5, gamma=0.0, d=1, alpha_ratio=(9, 10))
    expansion = origin_expansion(p, 3)
    assert expansion.regime == GENERIC
    assert expansion.first_collision == (4, 9)
    assert not expansion.search_complete

    never = origin_expansion(EquationParams(alpha=2.0, beta=0.5, d=1, alpha_ratio=(2, 1)), 5)
    assert never.regime == GENERIC
    assert never.search_complete


@pytest.mark.parametrize(
    "alpha, beta, gamma, d",
    [(2.0, 1.0, 0.0, 1), (0.5, 0.5, 0.0, 1), (1.0, 0.5, 0.5, 1), (math.sqrt(2), 1.0, 0.0, 1), (0.7, 1.2, 0.3, 3)],
)
def test_origin_singularity_class(alpha, beta, gamma, d):
    theta, _ = origin_expansion(EquationParams(alpha=alpha, beta=beta, gamma=gamma, d=d), 10).leading_singularity()
    assert 0.0 <= theta + 1e-12 and theta < d


def test_origin_expansion_partial_sum_slope():
    p = EquationParams(alpha=math.sqrt(2), beta=1.0, gamma=0.0, nu=2.0, d=1)
    expansion = origin_expansion(p, 12)
    zs = np.array([1e-1, 1e-2, 1e-3])
    errors = [abs(kernel_profile(p, z) - expansion.evaluate(z, n_terms=1)) for z in zs]
    slope = np.polyfit(np.log(zs), np.log(errors), 1)[0]
    next_exponent = next(t.exponent for t in expansion.terms[1:] if t.coefficient != 0.0)
    assert slope == pytest.approx(next_exponent, rel=0.15)


@pytest.mark.slow
def test_origin_expansion_log_term_improves_fit():
    p = EquationParams(alpha=1.0, beta=0.5, gamma=0.5, nu=2.0, d=1)
    expansion = origin_expansion(p, 4)
    for z in (1e-2, 1e-3):
        target = kernel_profile(p, z)
        with_log = abs(target - expansion.evaluate(z))
        without_log = abs(target - expansion.evaluate(z, include_log=False))
        assert without_log >= 10 * with_log


def test_origin_expansion_rejects_wave_regime(wave_params):
    with pytest.raises(UnsupportedParameterError):
        origin_expansion(wave_params, 5)


# Infinity asymptote


def test_infinity_asymptote_gaussian(heat_params):
    tail = infinity_asymptote(heat_params)
    assert tail.form is AsymptoteForm.STRETCHED_EXP
    assert tail.constants["Theta22"] == pytest.approx(0.25, abs=1e-12)
    assert tail.constants["stretch_exponent"] == pytest.approx(2.0)
    for r in (1.0, 3.0, 5.0):
        assert tail.leading_term(r) == pytest.approx(heat_kernel(1.0, r), rel=1e-12)
        assert tail.evaluate(2.0, r) == pytest.approx(heat_kernel(2.0, r), rel=1e-12)


def test_infinity_asymptote_power_law_constant():
    tail = infinity_asymptote(EquationParams(alpha=1.0, beta=0.5, gamma=0.0, nu=2.0, d=1))
    assert tail.form is AsymptoteForm.POWER_LAW
    assert tail.constants["Theta1"] == pytest.approx(1.0 / math.pi, rel=1e-12)


def test_infinity_asymptote_power_law_large_gamma():
    # Gamma(2 beta + gamma) overflows a double at gamma = 171; its reciprocal does not
    tails = [
        infinity_asymptote(EquationParams(alpha=1.0, beta=0.5, gamma=g, nu=2.0, d=1)) for g in (170.0, 171.0)
    ]
    low, high = (tail.constants["Theta1"] for tail in tails)
    assert math.isfinite(high) and high > 0.0
    assert high / low == pytest.approx(1.0 / 171.0, rel=1e-6)


def test_infinity_asymptote_oscillatory_angle():
    tail = infinity_asymptote(EquationParams(alpha=4.0, beta=1.0, gamma=0.0, nu=1.0, d=1))
    assert tail.form is AsymptoteForm.OSCILLATORY_EXP
    assert tail.constants["theta"] == pytest.approx(math.pi / 6)
    assert tail.constants["Theta33"] > 0
    assert 0 < tail.constants["theta"] < math.pi / 2


def test_infinity_asymptote_alpha_two_with_memory():
    p = EquationParams(alpha=2.0, beta=0.6, gamma=0.3, nu=1.3, d=1)
    tail = infinity_asymptote(p)
    assert tail.form is AsymptoteForm.STRETCHED_EXP
    assert tail.constants["Theta22"] > 0


def test_infinity_asymptote_requires_beta_below_two(wave_params):
    with pytest.raises(UnsupportedParameterError):
        infinity_asymptote(wave_params)


@pytest.mark.slow
def test_infinity_asymptote_power_law_against_quadrature():
    p = EquationParams(alpha=1.0, beta=0.5, gamma=0.0, nu=2.0, d=1)
    tail = infinity_asymptote(p)
    ratios = [green_function(p, 1.0, x) * x ** (p.d + p.alpha) / tail.constants["Theta1"] for x in (20.0, 40.0, 80.0)]
    assert 0.9 <= ratios[-1] <= 1.1
    drifts = [abs(r - 1.0) for r in ratios]
    assert drifts[2] < drifts[0]


def test_infinity_asymptote_stretched_against_quadrature():
    # alpha = 2, beta = 1, gamma = 0 is Gaussian for every nu
    p = EquationParams(alpha=2.0, beta=1.0, gamma=0.0, nu=1.0, d=1)
    tail = infinity_asymptote(p)
    for x in (2.0, 4.0):
        assert green_function(p, 1.0, x) == pytest.approx(tail.leading_term(x), rel=1e-6)


def test_ml_symbol_matches_closed_form(heat_params):
    assert fourier_kernel("Y", heat_params, 2.0, 0.7) == pytest.approx(ml_eval(1.0, 1.0, -0.98), rel=1e-14)
