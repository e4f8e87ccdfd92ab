"""Integrals of products and powers of Mittag-Leffler functions, with their bound shapes."""

import logging
import math
from enum import Enum
from typing import Callable, List

from fracspde.errors import DivergenceError, DomainError, UnsupportedParameterError
from fracspde.settings import ML_ASYMPTOTIC_ONSET
from fracspde.specfun.gamma import reciprocal_gamma
from fracspde.specfun.mittag_leffler import ml_eval
from fracspde.specfun.params import DEFAULT_TOLERANCE, EvalTolerance
from fracspde.specfun.quadrature import quad_checked
from fracspde.variance.oscillatory import fourier_tail, zero_points
from fracspde.variance.params import DEFAULT_QUADRATURE, QuadratureSpec

logger = logging.getLogger(__name__)


class ProductCase(str, Enum):
    """Parameter families with a known bound for the product integral."""

    GENERAL = "general"  # a in (0, 2) with b >= a, or a = 2 with b >= 3
    WAVE = "wave"  # a = 2, b in (1, 2) or (2, 3), b - theta > 3/2


def product_case(a: float, b: float, theta: float) -> ProductCase:
    """
    Classify (a, b, theta) for the product integral.

    Raises:
        UnsupportedParameterError: If no bound is known for the indices
    """
    if (0.0 < a < 2.0 and b >= a) or (a == 2.0 and b >= 3.0):
        return ProductCase.GENERAL
    if a == 2.0 and (1.0 < b < 2.0 or 2.0 < b < 3.0) and b - theta > 1.5:
        return ProductCase.WAVE
    raise UnsupportedParameterError(f"no product bound for a={a}, b={b}, theta={theta}")


def _check_product_args(theta: float, s1: float, s2: float) -> None:
    if not -1.0 < theta < 1.0:
        raise DomainError(f"theta must lie in (-1, 1), got {theta}")
    if s1 <= 0.0 or s2 <= 0.0:
        raise DomainError(f"scales must be positive, got s1={s1}, s2={s2}")


def ml_product_integral(
    a: float, b: float, theta: float, s1: float, s2: float, q: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """
    Compute I(s1, s2) = int_0^inf x^theta E_{a,b}(-s1 x) E_{a,b}(-s2 x) dx.

    Args:
        a: Mittag-Leffler order in (0, 2]
        b: Second index
        theta: Power in (-1, 1)
        s1: Positive scale
        s2: Positive scale
        q: Quadrature settings

    Returns:
        The integral

    Raises:
        DomainError: If theta or a scale is out of range
        UnsupportedParameterError: If (a, b, theta) is in no bounded family
        DivergenceError: If the oscillatory tail does not converge
    """
    _check_product_args(theta, s1, s2)
    product_case(a, b, theta)
    return ml_product(a, b, b, theta, s1, s2, q)


def ml_product(
    a: float,
    b1: float,
    b2: float,
    theta: float,
    s1: float,
    s2: float,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
    tol: EvalTolerance = DEFAULT_TOLERANCE,
) -> float:
    """
    int_0^inf x^theta E_{a,b1}(-s1 x) E_{a,b2}(-s2 x) dx for any a in (0, 2].

    The integral is split at 1/s2 and 1/s1 for a < 2. For a = 2 the
    substitution x = y^2 turns the factors into damped waves; beyond the
    point where each argument is large it is split into its wave part
    (r y)^{1-b} cos(r y - pi (b-1)/2) and a smooth remainder, and the wave
    parts go through the Fourier routines.
    """
    _check_product_args(theta, s1, s2)
    if s1 > s2:
        s1, s2, b1, b2 = s2, s1, b2, b1
    if a < 2.0:
        return _product_decaying(a, b1, b2, theta, s1, s2, q, tol)
    return _product_wave(b1, b2, theta, s1, s2, q, tol)


def _decades(lower: float, upper: float) -> List[float]:
    points = []
    x = lower * 10.0
    while x < upper:
        points.append(x)
        x *= 10.0
    return points


def _product_decaying(
    a: float, b1: float, b2: float, theta: float, s1: float, s2: float, q: QuadratureSpec, tol: EvalTolerance
) -> float:
    def pair(x: float) -> float:
        q.check()
        return ml_eval(a, b1, -s1 * x, tol) * ml_eval(a, b2, -s2 * x, tol)

    def weighted(x: float) -> float:
        return x**theta * pair(x)

    x2, x1 = 1.0 / s2, 1.0 / s1
    near, _ = quad_checked(
        pair, 0.0, x2, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_panels, weight="alg", wvar=(theta, 0.0),
        what="ML product near zero",
    )
    middle = 0.0
    if x1 > x2:
        middle, _ = quad_checked(
            weighted, x2, x1, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_panels, points=_decades(x2, x1),
            what="ML product middle",
        )
    far, _ = quad_checked(
        weighted, x1, math.inf, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_panels, what="ML product tail"
    )
    return near + middle + far


def _wave_phase(b: float) -> float:
    return 0.5 * math.pi * (b - 1.0)


def _is_pure_wave(b: float) -> bool:
    # E_{2,1}(-z^2) = cos z and E_{2,2}(-z^2) = sin z / z have no smooth part
    return b in (1.0, 2.0)


def _product_wave(
    b1: float, b2: float, theta: float, s1: float, s2: float, q: QuadratureSpec, tol: EvalTolerance
) -> float:
    r1, r2 = math.sqrt(s1), math.sqrt(s2)
    phi1, phi2 = _wave_phase(b1), _wave_phase(b2)

    decay = 2.0 * theta + 3.0 - b1 - b2
    if decay >= 0.0:
        raise DivergenceError(f"wave tail y^{decay:.6g} does not decay (b1={b1}, b2={b2}, theta={theta})")
    if r1 == r2 and decay >= -1.0 and abs(math.cos(phi2 - phi1)) > 1e-12:
        raise DivergenceError(f"diagonal product integral diverges (b1={b1}, b2={b2}, theta={theta})")

    def ml(b: float, r: float, y: float) -> float:
        return ml_eval(2.0, b, -((r * y) ** 2), tol)

    def amp(b: float, r: float, y: float) -> float:
        return (r * y) ** (1.0 - b)

    def smooth(b: float, r: float, phi: float, y: float) -> float:
        if _is_pure_wave(b):
            return 0.0
        return ml(b, r, y) - amp(b, r, y) * math.cos(r * y - phi)

    def w(y: float) -> float:
        q.check()
        return 2.0 * y ** (2.0 * theta + 1.0)

    y2 = ML_ASYMPTOTIC_ONSET / r2
    y1 = ML_ASYMPTOTIC_ONSET / r1
    first_zero = math.pi / r2

    near, _ = quad_checked(
        lambda y: 2.0 * ml(b1, r1, y) * ml(b2, r2, y),
        0.0,
        first_zero,
        epsabs=q.abs_tol,
        epsrel=q.rel_tol,
        limit=q.max_panels,
        weight="alg",
        wvar=(2.0 * theta + 1.0, 0.0),
        what="wave product near zero",
    )
    head, _ = quad_checked(
        lambda y: w(y) * ml(b1, r1, y) * ml(b2, r2, y),
        first_zero,
        y2,
        epsabs=q.abs_tol,
        epsrel=q.rel_tol,
        limit=q.max_panels,
        points=zero_points(first_zero, y2, r2, q),
        what="wave product head",
    )
    total = near + head

    pieces: List[float] = []
    if y1 > y2:
        # only the second factor is in its asymptotic range
        pieces.append(
            fourier_tail(lambda y: w(y) * ml(b1, r1, y) * amp(b2, r2, y), y2, r2, phi2, q, upper=y1, what="wave product middle")
        )
        if not _is_pure_wave(b2):
            middle, _ = quad_checked(
                lambda y: w(y) * ml(b1, r1, y) * smooth(b2, r2, phi2, y),
                y2,
                y1,
                epsabs=q.abs_tol,
                epsrel=q.rel_tol,
                limit=q.max_panels,
                points=zero_points(y2, y1, r1, q),
                what="wave product middle (smooth)",
            )
            pieces.append(middle)

    start = max(y1, y2)

    def amps(y: float) -> float:
        return 0.5 * w(y) * amp(b1, r1, y) * amp(b2, r2, y)

    tails: List[Callable[[], float]] = [
        lambda: fourier_tail(amps, start, r2 - r1, phi2 - phi1, q, what="wave beat tail"),
        lambda: fourier_tail(amps, start, r1 + r2, phi1 + phi2, q, what="wave sum tail"),
    ]
    if not _is_pure_wave(b2):
        tails.append(
            lambda: fourier_tail(lambda y: w(y) * amp(b1, r1, y) * smooth(b2, r2, phi2, y), start, r1, phi1, q)
        )
    if not _is_pure_wave(b1):
        tails.append(
            lambda: fourier_tail(lambda y: w(y) * smooth(b1, r1, phi1, y) * amp(b2, r2, y), start, r2, phi2, q)
        )
    if not (_is_pure_wave(b1) or _is_pure_wave(b2)):
        tails.append(
            lambda: quad_checked(
                lambda y: w(y) * smooth(b1, r1, phi1, y) * smooth(b2, r2, phi2, y),
                start,
                math.inf,
                epsabs=q.abs_tol,
                epsrel=q.rel_tol,
                limit=q.max_panels,
                what="wave smooth tail",
            )[0]
        )
    pieces.extend(tail() for tail in tails)
    total += math.fsum(pieces)
    logger.debug(f"wave product (b1={b1}, b2={b2}, theta={theta}, s=({s1}, {s2})): head {near + head:.6g}, total {total:.6g}")
    return total


def ml_product_bound(a: float, b: float, theta: float, s1: float, s2: float) -> float:
    """
    Bound shape of the product integral, up to a constant.

    General family:
        s1^{-theta} s2^{-1} (theta > 0), s2^{-1} (1 + log(s2/s1)) (theta = 0),
        s2^{-theta-1} (theta < 0), with s1 <= s2.
    Wave family, by the position of b against 2 + theta and 3 + 2 theta:
        b < 2+theta:        s1^{b/2-theta-3/2} s2^{-(b-1)/2}
                            + (s1 s2)^{-(b-1)/2} (sqrt(s2) - sqrt(s1))^{2b-2theta-4}
        b = 2+theta:        (s1 s2)^{-(b-1)/2} (1 + |log(1 - sqrt(s1/s2))|)
        2+theta < b < 3+2theta: s1^{b/2-theta-3/2} s2^{-(b-1)/2}
        b = 3+2theta:       s2^{-theta-1} (1 + log(s2/s1))
        b > 3+2theta:       s2^{-theta-1}
    """
    _check_product_args(theta, s1, s2)
    s1, s2 = min(s1, s2), max(s1, s2)
    case = product_case(a, b, theta)

    if case is ProductCase.GENERAL:
        if theta > 0.0:
            return s1 ** (-theta) / s2
        if theta == 0.0:
            return (1.0 + math.log(s2 / s1)) / s2
        return s2 ** (-theta - 1.0)

    low, high = 2.0 + theta, 3.0 + 2.0 * theta
    mixed = s1 ** (0.5 * b - theta - 1.5) * s2 ** (-0.5 * (b - 1.0))
    if math.isclose(b, low):
        gap = 1.0 - math.sqrt(s1 / s2)
        return (s1 * s2) ** (-0.5 * (b - 1.0)) * (1.0 + abs(math.log(gap))) if gap > 0.0 else math.inf
    if b < low:
        gap = math.sqrt(s2) - math.sqrt(s1)
        if gap == 0.0:
            return math.inf
        return mixed + (s1 * s2) ** (-0.5 * (b - 1.0)) * gap ** (2.0 * b - 2.0 * theta - 4.0)
    if math.isclose(b, high):
        return s2 ** (-theta - 1.0) * (1.0 + math.log(s2 / s1))
    if b < high:
        return mixed
    return s2 ** (-theta - 1.0)


def _check_time_args(beta: float, theta_b: float, H: float, lam: float, t: float) -> None:
    if not 0.0 < H < 1.0:
        raise DomainError(f"H must lie in (0, 1), got {H}")
    if not 0.0 < beta <= 2.0:
        raise DomainError(f"beta must lie in (0, 2], got {beta}")
    if theta_b + H <= 1.0:
        raise DomainError(f"the time integral needs theta_b + H > 1, got {theta_b} + {H}")
    if t <= 0.0 or lam < 0.0:
        raise DomainError(f"need t > 0 and lambda >= 0, got t={t}, lambda={lam}")


def ml_power_time_integral(
    beta: float, theta_b: float, H: float, lam: float, t: float, q: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """
    Compute int_0^t w^{(theta_b-1)/H} |E_{beta,theta_b}(-lam w^beta)|^{1/H} dw.

    Raises:
        DomainError: If theta_b + H <= 1 or another argument is out of range
    """
    _check_time_args(beta, theta_b, H, lam, t)
    power = (theta_b - 1.0) / H
    total_power = (theta_b + H - 1.0) / H
    if lam == 0.0:
        return t**total_power / total_power * abs(reciprocal_gamma(theta_b)) ** (1.0 / H)

    def magnitude(w: float) -> float:
        q.check()
        return abs(ml_eval(beta, theta_b, -lam * w**beta)) ** (1.0 / H)

    scale = lam ** (-1.0 / beta)
    split = min(t, scale)
    value, _ = quad_checked(
        magnitude, 0.0, split, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_panels, weight="alg",
        wvar=(power, 0.0), what="ML time integral head",
    )
    if t > split:
        tail, _ = quad_checked(
            lambda w: w**power * magnitude(w), split, t, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_panels,
            points=_decades(split, t), what="ML time integral tail",
        )
        value += tail
    return value


def ml_power_time_bound(beta: float, theta_b: float, H: float, lam: float, t: float) -> float:
    """
    Bound shape t^{(theta_b+H-1)/H} / (1 + (t lam^{1/beta})^e) of the time integral.

    e = min(beta/H, (theta_b+H-1)/H) for beta < 2 or theta_b >= 3, and
    e = (theta_b-1)/H for beta = 2 with theta_b in [2, 3).

    Raises:
        UnsupportedParameterError: For beta = 2 with theta_b < 2
    """
    _check_time_args(beta, theta_b, H, lam, t)
    total_power = (theta_b + H - 1.0) / H
    if beta < 2.0 or theta_b >= 3.0:
        exponent = min(beta / H, total_power)
    elif theta_b >= 2.0:
        exponent = (theta_b - 1.0) / H
    else:
        raise UnsupportedParameterError(f"no time-integral bound for beta=2 with theta_b={theta_b} < 2")
    return t**total_power / (1.0 + (t * lam ** (1.0 / beta)) ** exponent)
