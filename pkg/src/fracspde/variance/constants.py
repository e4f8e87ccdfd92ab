"""
The second-moment constant K with E[u(t,x)^2] = K t^{2 rho0}.

Normalisation: the noise inner product is 2 pi int |xi|^{ell-d} dxi times
int phi psi ds for H = 1/2, and times a_H int int |s1 - s2|^{2H-2} phi psi
for H > 1/2, with a_H = H (2H - 1).
"""

import logging
import math
from typing import Any, Dict, Optional, Tuple, Union

from fracspde.errors import DomainError, RegimeError
from fracspde.kernel.params import EquationParams
from fracspde.settings import ARITHMETIC_REL_TOL
from fracspde.solvability.dalang import dalang_check
from fracspde.solvability.exponents import exponents
from fracspde.solvability.params import NoiseParams
from fracspde.specfun.gamma import gamma
from fracspde.specfun.hypergeometric import hyp2f1
from fracspde.specfun.quadrature import quad_checked
from fracspde.variance.mittag_integrals import ml_product
from fracspde.variance.params import DEFAULT_QUADRATURE, Method, QuadratureSpec

logger = logging.getLogger(__name__)

# endpoints of the unit interval are replaced by this distance
_ENDPOINT_GAP = 1e-9


def surface_constant(d: int) -> float:
    """Area of the unit sphere in R^d, 2 pi^{d/2} / Gamma(d/2)."""
    return 2.0 * math.pi ** (d / 2.0) / gamma(d / 2.0)


def hurst_kernel_constant(H: float) -> float:
    """a_H = H (2H - 1) in front of |s1 - s2|^{2H-2}."""
    return H * (2.0 * H - 1.0)


def spectral_time_constant(H: float) -> float:
    """Gamma(2H + 1) sin(pi H): weight of |tau|^{1-2H} matching the time-domain normalisation."""
    return gamma(2.0 * H + 1.0) * math.sin(math.pi * H)


def radial_constant(p: EquationParams, n: NoiseParams) -> float:
    """(1/alpha) (nu/2)^{-ell/alpha}: int r^{ell-1} f(nu r^alpha / 2) dr = this times int x^{ell/alpha-1} f(x) dx."""
    return (0.5 * p.nu) ** (-n.ell / p.alpha) / p.alpha


def require_solvable(p: EquationParams, n: NoiseParams) -> None:
    """Raise RegimeError unless a random field solution is guaranteed."""
    verdict = dalang_check(p, n)
    if not verdict.solvable:
        raise RegimeError(
            f"no random field solution for {p.to_dict()} with {n.to_dict()} ({verdict.status.value}, "
            f"case {verdict.case_tag.value}, threshold {verdict.threshold:.6g})"
        )


class KResult:
    """Value of K and how it was obtained."""

    def __init__(self, value: float, method: Method, case_tag: Optional[str], rho0: float, fallback: bool = False):
        self.value = value
        self.method = method
        self.case_tag = case_tag
        self.rho0 = rho0
        self.fallback = fallback

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "method": self.method.value,
            "case_tag": self.case_tag,
            "rho0": self.rho0,
            "fallback": self.fallback,
        }


def _gamma_cos(r: float) -> float:
    # Gamma(2r - 2) cos(pi r) through the reflection formula; finite at r = 1/2
    return math.pi / (2.0 * math.sin(math.pi * r) * gamma(3.0 - 2.0 * r))


def k_closed_form(p: EquationParams, n: NoiseParams) -> Optional[Tuple[float, str]]:
    """
    K in closed form, when one exists.

    Covered: gamma = 0 with beta = 1 (tags K+1 for H = 1/2, K-0 for H > 1/2)
    or beta = 2 (K-1, K-2 for H = 1/2; K-3, K-4, K-5 for H > 1/2).

    Returns:
        (K, case tag) or None when the parameters are in no closed-form case
    """
    if p.gamma != 0.0 or p.beta not in (1.0, 2.0):
        return None
    alpha, nu, d = p.alpha, p.nu, p.d
    H, ell = n.H, n.ell
    r = ell / alpha
    gd = gamma(d / 2.0)

    if p.beta == 1.0:
        if ell >= 2.0 * alpha * H:
            return None
        if H == 0.5:
            value = 4.0 * math.pi ** ((2.0 + d) / 2.0) * gamma(r) / (nu**r * gd * (alpha - ell))
            return value, "K+1"
        value = (
            2.0 ** (3.0 + r) * H * math.pi ** ((2.0 + d) / 2.0) * gamma(r) * hyp2f1(1.0, r, 2.0 * H, -1.0)
            / (nu**r * gd * (2.0 * alpha * H - ell))
        )
        return value, "K-0"

    half = math.isclose(ell, alpha / 2.0, rel_tol=ARITHMETIC_REL_TOL)
    if H == 0.5:
        if half:
            return math.sqrt(2.0 * nu) * math.pi ** ((d + 4.0) / 2.0) / (gd * alpha), "K-2"
        if ell >= alpha:
            return None
        value = (
            2.0 ** (3.0 - r) * nu ** (1.0 - r) * math.pi ** ((d + 2.0) / 2.0) * _gamma_cos(r)
            / (gd * (3.0 * alpha - 2.0 * ell))
        )
        return value, "K-1"

    if half:
        return 2.0**1.5 * math.sqrt(nu) * math.pi ** ((d + 4.0) / 2.0) / (alpha * (1.0 + 2.0 * H) * gd), "K-4"
    if math.isclose(ell, alpha, rel_tol=ARITHMETIC_REL_TOL):
        value = (
            4.0 * math.pi ** ((d + 2.0) / 2.0) / (alpha * gd)
            * (hyp2f1(1.0, 1.0, 1.0 + 2.0 * H, -1.0) / (2.0 * H) + 1.0 / (2.0 * H - 1.0))
        )
        return value, "K-5"
    if ell >= (0.5 + H) * alpha:
        return None
    bracket = alpha * (1.0 - 2.0 * H) / ((alpha * (0.5 + H) - ell) * (alpha * (1.0 + H) - ell)) + 2.0 * hyp2f1(
        1.0, 2.0 * (r - 1.0), 2.0 * H, -1.0
    ) / (alpha * (1.0 + H) - ell)
    value = 2.0**r * nu ** (1.0 - r) * H * math.pi ** ((d + 2.0) / 2.0) / gd * _gamma_cos(r) * bracket
    return value, "K-3"


def k_quadrature(p: EquationParams, n: NoiseParams, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """
    K by quadrature for any solvable parameter set.

    The radial integral of a product of two symbols at times s1 <= s2 is
    (1/alpha)(nu/2)^{-ell/alpha} (s1 s2)^{b-1} s2^{-ell beta/alpha} J((s1/s2)^beta),
    with b = beta + gamma and J(sigma) = int x^{ell/alpha-1} E_{beta,b}(-sigma x) E_{beta,b}(-x) dx.
    Scaling in s2 then leaves J(1) / (2 rho0) for H = 1/2 and a weighted
    integral of J over the time ratio v = s1/s2 for H > 1/2.
    """
    require_solvable(p, n)
    beta, b = p.beta, p.beta + p.gamma
    theta = n.ell / p.alpha - 1.0
    rho0 = exponents(p, n).rho0
    prefactor = 2.0 * math.pi * surface_constant(p.d) * radial_constant(p, n)

    if n.white_in_time:
        return prefactor * ml_product(beta, b, b, theta, 1.0, 1.0, q) / (2.0 * rho0)

    left = max(theta, 0.0)
    right = max(0.0, 2.0 * theta + 4.0 - 2.0 * b) if beta == 2.0 else 0.0
    left_power = b - 1.0 - beta * left
    right_power = 2.0 * n.H - 2.0 - right
    if left_power <= -1.0 or right_power <= -1.0:
        raise DomainError(f"time-ratio integral is singular beyond integrability (powers {left_power}, {right_power})")

    def regularised(v: float) -> float:
        q.check()
        v = min(max(v, _ENDPOINT_GAP), 1.0 - _ENDPOINT_GAP)
        return v ** (beta * left) * (1.0 - v) ** right * ml_product(beta, b, b, theta, v**beta, 1.0, q)

    ratio_integral, _ = quad_checked(
        regularised,
        0.0,
        1.0,
        epsabs=q.abs_tol,
        epsrel=q.rel_tol,
        limit=q.max_panels,
        weight="alg",
        wvar=(left_power, right_power),
        what="K time-ratio integral",
    )
    return prefactor * hurst_kernel_constant(n.H) * ratio_integral / rho0


def k_constant(
    p: EquationParams,
    n: NoiseParams,
    method: Union[Method, str] = Method.CLOSED_FORM,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> KResult:
    """
    Compute K such that E[u(t,x)^2] = K t^{2 rho0}.

    Args:
        p: Equation parameters
        n: Noise parameters
        method: closed_form (falls back to quadrature, flagged, when no
            closed form covers the parameters) or quadrature
        q: Quadrature settings

    Returns:
        KResult

    Raises:
        RegimeError: If the equation has no random field solution
    """
    require_solvable(p, n)
    method = Method(method)
    rho0 = exponents(p, n).rho0

    if method is Method.CLOSED_FORM:
        closed = k_closed_form(p, n)
        if closed is not None:
            value, tag = closed
            logger.debug(f"K closed form {tag}: {value:.17g}")
            return KResult(value, Method.CLOSED_FORM, tag, rho0)
        logger.info(f"no closed form for {p.to_dict()} with {n.to_dict()}; using quadrature")
        return KResult(k_quadrature(p, n, q), Method.QUADRATURE, None, rho0, fallback=True)

    return KResult(k_quadrature(p, n, q), Method.QUADRATURE, None, rho0)


def second_moment(p: EquationParams, n: NoiseParams, t: float, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """E[u(t,x)^2] = K t^{2 rho0}."""
    if t <= 0.0:
        raise DomainError(f"time must be positive, got t={t}")
    result = k_constant(p, n, Method.CLOSED_FORM, q)
    return result.value * t ** (2.0 * result.rho0)
