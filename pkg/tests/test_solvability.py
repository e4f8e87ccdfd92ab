"""Tests for exponents, Dalang verdicts, regime tags and moduli."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from fracspde.errors import DomainError, RegimeError
from fracspde.kernel.params import EquationParams
from fracspde.solvability.dalang import DalangCase, VerdictStatus, dalang_check, solvability_threshold
from fracspde.solvability.exponents import exponents
from fracspde.solvability.params import NoiseParams
from fracspde.solvability.regime import SlndTime, modulus, moduli_samples, regime_report, solvability_report


def eq(alpha, beta, gamma=0.0, d=1, nu=1.0):
    return EquationParams(alpha=alpha, beta=beta, gamma=gamma, nu=nu, d=d)


def test_noise_params_validation():
    with pytest.raises(ValidationError):
        NoiseParams(H=1.0, ell=1.0)
    with pytest.raises(ValidationError):
        NoiseParams(H=0.4, ell=1.0)
    with pytest.raises(ValidationError):
        NoiseParams(H=0.5, ell=0.0)
    with pytest.raises(DomainError):
        exponents(eq(2.0, 1.0), NoiseParams(H=0.5, ell=2.0))


def test_exponents_heat(white_noise):
    ex = exponents(eq(2.0, 1.0), white_noise)
    assert ex.rho == pytest.approx(0.25)
    assert ex.rho_tilde == pytest.approx(0.5)
    assert ex.rho0 == ex.rho1


def test_exponents_wave(white_noise):
    ex = exponents(eq(2.0, 2.0), white_noise)
    assert ex.rho == ex.rho2
    assert ex.rho == pytest.approx(0.5)
    assert ex.rho_tilde2 == pytest.approx(0.5)


def test_exponents_jump_above_unit_gamma(white_noise):
    at_one = exponents(eq(2.0, 2.0, gamma=1.0), white_noise)
    above = exponents(eq(2.0, 2.0, gamma=1.0 + 1e-9), white_noise)
    assert at_one.rho == at_one.rho2
    assert above.rho == above.rho1
    assert above.rho - at_one.rho == pytest.approx(0.5, abs=1e-8)


@pytest.mark.parametrize(
    "p, n, status, case",
    [
        (eq(2.0, 2.0, d=2), NoiseParams(H=0.5, ell=2.0), VerdictStatus.NOT_SOLVABLE, DalangCase.WAVE),
        (eq(2.0, 1.0, d=2), NoiseParams(H=0.75, ell=2.9), VerdictStatus.SOLVABLE, DalangCase.GENERAL),
        (eq(2.0, 2.0, gamma=0.5, d=2), NoiseParams(H=0.5, ell=3.5), VerdictStatus.UNKNOWN, DalangCase.WAVE_MEMORY),
        (eq(2.0, 2.0, gamma=0.5, d=2), NoiseParams(H=0.5, ell=2.5), VerdictStatus.SOLVABLE_SUFFICIENT_ONLY, DalangCase.WAVE_MEMORY),
        (eq(2.0, 1.0, d=2), NoiseParams(H=0.5, ell=2.0), VerdictStatus.NOT_SOLVABLE, DalangCase.GENERAL),
        (eq(1.0, 1.0, gamma=1.5, d=2), NoiseParams(H=0.5, ell=2.0), VerdictStatus.NOT_SOLVABLE, DalangCase.GENERAL),
    ],
)
def test_dalang_examples(p, n, status, case):
    verdict = dalang_check(p, n)
    assert verdict.status is status
    assert verdict.case_tag is case


@pytest.mark.parametrize("gamma", [1.5, 2.5])
def test_dalang_wave_above_unit_gamma_is_decided(gamma):
    for ell in (0.5, 1.5, 2.5, 3.5):
        verdict = dalang_check(eq(2.0, 2.0, gamma=gamma, d=2), NoiseParams(H=0.5, ell=ell))
        assert verdict.case_tag is DalangCase.GENERAL
        assert verdict.status is not VerdictStatus.UNKNOWN


def test_dalang_boundary_flag():
    verdict = dalang_check(eq(2.0, 2.0, d=2), NoiseParams(H=0.5, ell=2.0))
    assert verdict.boundary
    assert verdict.threshold == 2.0
    # rho0 = 0 exactly
    assert dalang_check(eq(2.0, 1.0, d=2), NoiseParams(H=0.5, ell=2.0)).boundary
    # ell = 2 alpha with rho0 > 0
    assert dalang_check(eq(1.0, 1.0, gamma=1.5, d=2), NoiseParams(H=0.5, ell=2.0)).boundary
    assert not dalang_check(eq(2.0, 1.0, d=2), NoiseParams(H=0.75, ell=2.9)).boundary


def _random_sweep(size, seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(size):
        d = int(rng.integers(1, 4))
        beta = 2.0 if rng.random() < 0.2 else float(rng.uniform(0.05, 2.0))
        p = eq(float(rng.uniform(0.2, 4.0)), beta, gamma=float(rng.uniform(0.0, 2.0)) * (rng.random() > 0.1), d=d)
        n = NoiseParams(H=float(rng.uniform(0.5, 0.999)), ell=float(rng.uniform(0.01, 2 * d - 0.01)))
        yield p, n


def test_dalang_sweep_matches_direct_inequalities():
    for p, n in _random_sweep(10_000):
        verdict = dalang_check(p, n)
        ex = exponents(p, n)
        if verdict.case_tag is DalangCase.GENERAL:
            direct = ex.rho0 > 0 and n.ell < 2 * p.alpha
            assert (verdict.status is VerdictStatus.SOLVABLE) == direct
        elif verdict.case_tag is DalangCase.WAVE:
            assert (verdict.status is VerdictStatus.SOLVABLE) == (n.ell < (0.5 + n.H) * p.alpha)
        else:
            sufficient = n.ell < min(2.0, p.gamma + n.H + 0.5) * p.alpha
            assert (verdict.status is VerdictStatus.SOLVABLE_SUFFICIENT_ONLY) == sufficient
            assert (verdict.status is VerdictStatus.UNKNOWN) == (not sufficient)
        if p.beta == 2.0 and p.gamma <= 0.5 and ex.rho > 0:
            assert n.ell < 2 * p.alpha


def test_dalang_monotone_in_ell():
    for p, n in _random_sweep(300, seed=1):
        ells = np.linspace(0.01, 2 * p.d - 0.01, 40)
        statuses = [dalang_check(p, NoiseParams(H=n.H, ell=float(ell))).solvable for ell in ells]
        first_failure = statuses.index(False) if False in statuses else len(statuses)
        assert not any(statuses[first_failure:])


@pytest.mark.parametrize("H", [0.5, 0.75, 0.9])
def test_threshold_jump_at_wave_endpoint(H):
    alpha = 1.7
    n = NoiseParams(H=H, ell=0.5)
    below = solvability_threshold(eq(alpha, 2.0 - 1e-10), n)
    at = solvability_threshold(eq(alpha, 2.0), n)
    assert below == pytest.approx(2 * alpha + alpha * (H - 1), rel=1e-9)
    assert at == pytest.approx((0.5 + H) * alpha)
    assert below - at == pytest.approx(alpha / 2, rel=1e-8)


def test_regime_tags():
    n = NoiseParams(H=0.5, ell=0.5)
    assert regime_report(eq(2.0, 1.0, gamma=3.0), n).slnd_time is SlndTime.TWO_SIDED
    assert regime_report(eq(2.0, 1.5), n).slnd_time is SlndTime.ONE_SIDED
    assert regime_report(eq(2.0, 2.0, gamma=2.0), n).slnd_time is SlndTime.NONE
    assert regime_report(eq(2.0, 2.0, gamma=0.7), n).slnd_time is SlndTime.TWO_SIDED

    tags = regime_report(eq(2.0, 2.0, gamma=1.2, d=2), NoiseParams(H=0.5, ell=3.6))
    assert tags.extra_assumption_needed
    assert not tags.extra_assumption_holds
    assert not tags.temporal_upper_bound_valid
    assert not tags.variance_lower_time_valid
    assert tags.slnd_space

    tags = regime_report(eq(1.0, 1.0), NoiseParams(H=0.5, ell=1.5))
    assert not tags.slnd_space
    assert not tags.extra_assumption_needed


def test_modulus_examples(white_noise):
    critical = eq(2.0, 1.0, gamma=0.75)
    assert exponents(critical, white_noise).rho == 1.0
    r = math.exp(-1.0)
    assert modulus(critical, white_noise, "m1", r) == pytest.approx(2 * math.exp(-2.0))
    assert modulus(critical, white_noise, "w1", 0.5) == pytest.approx(0.5 * math.log(3.0))

    heat = eq(2.0, 1.0)
    assert modulus(heat, white_noise, "w1", 1.0) == pytest.approx(math.sqrt(math.log(2.0)))
    assert modulus(heat, white_noise, "m2", 0.01) == pytest.approx(0.01)
    assert modulus(heat, white_noise, "m1", 0.01) == pytest.approx(0.1)


def test_modulus_errors(white_noise):
    with pytest.raises(RegimeError):
        modulus(eq(2.0, 1.0, gamma=1.5), white_noise, "w1", 0.1)
    assert modulus(eq(2.0, 1.0, gamma=1.5), white_noise, "m1", 0.1) == pytest.approx(0.01)
    with pytest.raises(RegimeError):
        modulus(eq(1.0, 1.0), NoiseParams(H=0.5, ell=1.5), "m1", 0.1)
    with pytest.raises(DomainError):
        modulus(eq(2.0, 1.0), white_noise, "m1", 0.0)
    with pytest.raises(DomainError):
        modulus(eq(2.0, 1.0), white_noise, "m3", 0.1)


def test_moduli_samples_skip_undefined(white_noise):
    samples = moduli_samples(eq(2.0, 1.0, gamma=1.5), white_noise)
    assert samples["r"] == [1e-1, 1e-2, 1e-3]
    assert samples["w1"] is None
    assert len(samples["m1"]) == 3


def test_solvability_report_layout(white_noise):
    report = solvability_report(eq(2.0, 1.0), white_noise)
    assert set(report) == {"params", "exponents", "verdict", "tags", "moduli_samples"}
    assert report["verdict"]["status"] == "Solvable"
    assert report["tags"]["slnd_time"] == "two_sided"

    unsolvable = solvability_report(eq(1.0, 1.0), NoiseParams(H=0.5, ell=1.5))
    assert "moduli_samples" not in unsolvable
