"""
Power-weighted trigonometric integrals.

F_theta(s1, s2) = int_0^inf x^theta sin(s1 x) sin(s2 x) dx has elementary
closed forms; the quadrature oracle integrates a finite head directly and
the tail with QUADPACK's Fourier routine.
"""

import logging
import math
from typing import Callable, List, Optional, Tuple, Union

from fracspde.errors import DivergenceError, DomainError
from fracspde.settings import TRIG_HEAD_CYCLES
from fracspde.specfun.gamma import gamma
from fracspde.specfun.quadrature import quad_checked
from fracspde.variance.params import DEFAULT_QUADRATURE, Method, OscillationMode, QuadratureSpec

logger = logging.getLogger(__name__)


def zero_points(lower: float, upper: float, omega: float, q: QuadratureSpec) -> Optional[List[float]]:
    """Zeros of sin(omega x) inside (lower, upper), or None in plain adaptive mode."""
    if q.oscillation_mode is OscillationMode.PLAIN_ADAPTIVE or omega <= 0.0:
        return None
    period = math.pi / omega
    first = math.floor(lower / period) + 1
    count = min(int(upper / period) - first + 1, q.max_panels // 2)
    return [(first + k) * period for k in range(max(count, 0))]


def fourier_tail(
    func: Callable[[float], float],
    lower: float,
    omega: float,
    phase: float,
    q: QuadratureSpec,
    upper: float = math.inf,
    what: str = "Fourier tail",
) -> float:
    """
    Integral of func(y) cos(omega y - phase) over [lower, upper].

    The phase is expanded into a cosine and a sine weight so that both
    pieces go through the weighted QUADPACK routines (QAWF on infinite
    ranges, QAWO on finite ones).
    """
    c, s = math.cos(phase), math.sin(phase)
    if omega == 0.0:
        if abs(c) < 1e-15:
            return 0.0
        value, _ = quad_checked(func, lower, upper, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_panels, what=what)
        return c * value
    total = 0.0
    for weight, factor in (("cos", c), ("sin", s)):
        if abs(factor) < 1e-15:
            continue
        value, _ = quad_checked(
            func,
            lower,
            upper,
            epsabs=q.abs_tol,
            epsrel=q.rel_tol,
            limit=q.max_panels,
            weight=weight,
            wvar=omega,
            what=what,
        )
        total += factor * value
    return total


def trig_window(theta: float, diagonal: bool) -> Tuple[float, float]:
    """Open interval of theta for which F_theta converges."""
    return (-3.0, -1.0) if diagonal else (-3.0, 0.0)


def trig_integral_F(
    theta: float,
    s1: float,
    s2: float,
    method: Union[Method, str] = Method.CLOSED_FORM,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """
    Compute F_theta(s1, s2) = int_0^inf x^theta sin(s1 x) sin(s2 x) dx.

    Args:
        theta: Power of x
        s1: Positive frequency
        s2: Positive frequency (the pair is symmetric, order is irrelevant)
        method: closed_form or quadrature
        q: Quadrature settings for the oracle

    Returns:
        F_theta(s1, s2); non-negative off the diagonal

    Raises:
        DomainError: If a frequency is not positive
        DivergenceError: If theta is outside (-3, -1) on the diagonal or
            outside (-3, 0) off the diagonal
    """
    if s1 <= 0.0 or s2 <= 0.0:
        raise DomainError(f"frequencies must be positive, got s1={s1}, s2={s2}")
    s1, s2 = min(s1, s2), max(s1, s2)
    diagonal = s1 == s2
    low, high = trig_window(theta, diagonal)
    if not low < theta < high:
        where = "diagonal" if diagonal else "off-diagonal"
        raise DivergenceError(f"F_theta diverges for theta={theta} ({where} window is ({low}, {high}))")

    if Method(method) is Method.CLOSED_FORM:
        return _trig_closed(theta, s1, s2, diagonal)
    return _trig_quadrature(theta, s1, s2, q)


def _trig_closed(theta: float, s1: float, s2: float, diagonal: bool) -> float:
    if diagonal:
        if theta == -2.0:
            return 0.5 * math.pi * s1
        return gamma(1.0 + theta) * math.sin(0.5 * math.pi * theta) * s1 ** (-1.0 - theta) / 2.0 ** (2.0 + theta)
    if theta == -2.0:
        return 0.5 * math.pi * s1
    if theta == -1.0:
        return 0.5 * math.log((s1 + s2) / (s2 - s1))
    return (
        0.5
        * gamma(1.0 + theta)
        * math.sin(0.5 * math.pi * theta)
        * ((s2 + s1) ** (-1.0 - theta) - (s2 - s1) ** (-1.0 - theta))
    )


def _trig_quadrature(theta: float, s1: float, s2: float, q: QuadratureSpec) -> float:
    fast = s1 + s2
    head_end = TRIG_HEAD_CYCLES * 2.0 * math.pi / fast
    first_zero = min(math.pi / s2, head_end)

    # the product vanishes like x^2 at 0, so x^theta is integrable for theta > -3
    near, _ = quad_checked(
        lambda x: math.sin(s1 * x) * math.sin(s2 * x),
        0.0,
        first_zero,
        epsabs=q.abs_tol,
        epsrel=q.rel_tol,
        limit=q.max_panels,
        weight="alg",
        wvar=(theta, 0.0),
        what="F_theta origin panel",
    )
    points = sorted(set((zero_points(first_zero, head_end, s1, q) or []) + (zero_points(first_zero, head_end, s2, q) or [])))
    head, _ = quad_checked(
        lambda x: x**theta * math.sin(s1 * x) * math.sin(s2 * x),
        first_zero,
        head_end,
        epsabs=q.abs_tol,
        epsrel=q.rel_tol,
        limit=max(q.max_panels, 2 * len(points) + 50),
        points=points or None,
        what="F_theta head",
    )

    # sin(s1 x) sin(s2 x) = (cos((s2 - s1) x) - cos((s2 + s1) x)) / 2
    def power(x: float) -> float:
        return 0.5 * x**theta

    if s1 == s2:
        slow = 0.5 * head_end ** (theta + 1.0) / (-theta - 1.0)
    else:
        slow = fourier_tail(power, head_end, s2 - s1, 0.0, q, what="F_theta slow tail")
    fast_tail = fourier_tail(power, head_end, fast, 0.0, q, what="F_theta fast tail")
    value = near + head + slow - fast_tail
    logger.debug(f"F_{theta}({s1}, {s2}) oracle: origin {near:.6g}, head {head:.6g}, tails {slow:.6g}/{fast_tail:.6g}")
    return value


def oscillatory_tail(theta: float, t: float, zeta: float, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """
    Compute int_t^inf x^theta cos(x + zeta) dx.

    Raises:
        DomainError: If t <= 0
        DivergenceError: If theta >= 0
    """
    if t <= 0.0:
        raise DomainError(f"lower limit must be positive, got t={t}")
    if theta >= 0.0:
        raise DivergenceError(f"int_t^inf x^theta cos(x + zeta) dx diverges for theta={theta} >= 0")
    return fourier_tail(lambda x: x**theta, t, 1.0, -zeta, q, what="oscillatory tail")


def oscillatory_tail_bound(theta: float, t: float) -> Tuple[float, float]:
    """
    The two envelopes of |int_t^inf x^theta cos(x + zeta) dx|.

    Returns:
        (t^theta, e) where e is 1 for theta > -1, 1 + |log t| for
        theta = -1 and t^{theta+1} for theta < -1; the integral is bounded
        by a constant times the smaller of the two
    """
    if t <= 0.0:
        raise DomainError(f"lower limit must be positive, got t={t}")
    if theta > -1.0:
        second = 1.0
    elif theta == -1.0:
        second = 1.0 + abs(math.log(t))
    else:
        second = t ** (theta + 1.0)
    return t**theta, second
