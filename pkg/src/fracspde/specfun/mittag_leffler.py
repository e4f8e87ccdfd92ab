"""
Two-parameter Mittag-Leffler function E_{a,b} on the real line.

E_{a,b}(z) = sum_k z^k / Gamma(a k + b). For z <= 0 the evaluator picks
among closed forms, the Taylor series, the large-argument expansion and a
Hankel-contour integral so that the requested tolerance holds.
"""

import logging
import math
from enum import Enum
from typing import Callable, Iterable, List, Optional, Tuple, Union

import numpy as np

from fracspde.errors import ConvergenceError, DomainError, UnsupportedParameterError
from fracspde.settings import ML_INTEGRAL_LIMIT, ML_SERIES_FIRST_LIMIT
from fracspde.specfun.gamma import gamma_sign, is_nonpositive_integer, log_abs_gamma, reciprocal_gamma
from fracspde.specfun.params import DEFAULT_TOLERANCE, EvalTolerance, MLParams
from fracspde.specfun.quadrature import quad_checked

logger = logging.getLogger(__name__)

_EPS = float(np.finfo(float).eps)
_LOG_OVERFLOW = 700.0

Approximation = Tuple[float, float]


class MLBranch(str, Enum):
    """Evaluation routes for E_{a,b}."""

    CLOSED_FORM = "closed_form"
    SERIES = "series"
    ASYMPTOTIC = "asymptotic"
    INTEGRAL = "integral"


def mittag_leffler(
    p: MLParams,
    z: float,
    tol: EvalTolerance = DEFAULT_TOLERANCE,
    branch: Optional[Union[MLBranch, str]] = None,
) -> float:
    """
    Evaluate E_{a,b}(z) for real z.

    Args:
        p: Indices (a, b), with a in (0, 2]
        z: Real argument
        tol: Accuracy target
        branch: Force one evaluation route; a forced route returns its
            value without checking it against the tolerance

    Returns:
        E_{a,b}(z)

    Raises:
        UnsupportedParameterError: If a is outside (0, 2]
        ConvergenceError: If no route meets the tolerance
    """
    return ml_eval(p.a, p.b, z, tol, branch)


def mittag_leffler_many(
    a: float, b: float, z_values: Iterable[float], tol: EvalTolerance = DEFAULT_TOLERANCE
) -> np.ndarray:
    """Evaluate E_{a,b} elementwise over an array of arguments."""
    z_array = np.asarray(z_values, dtype=float)
    flat = [ml_eval(a, b, float(z), tol) for z in z_array.ravel()]
    return np.array(flat, dtype=float).reshape(z_array.shape)


def ml_eval(
    a: float,
    b: float,
    z: float,
    tol: EvalTolerance = DEFAULT_TOLERANCE,
    branch: Optional[Union[MLBranch, str]] = None,
) -> float:
    """Scalar E_{a,b}(z) without constructing an MLParams record (used in integrands)."""
    if not 0.0 < a <= 2.0:
        raise UnsupportedParameterError(f"Mittag-Leffler index a={a} outside (0, 2]")
    if not math.isfinite(z):
        raise DomainError(f"Mittag-Leffler argument must be finite, got {z}")

    if branch is not None:
        return _forced(a, b, z, tol, MLBranch(branch))

    closed = _closed_form(a, b, z)
    if closed is not None:
        return closed
    if z == 0.0:
        return reciprocal_gamma(b)

    if z > 0.0:
        value, error = _series(a, b, z, tol)
        if tol.accepts(error, value):
            return value
        raise ConvergenceError(f"E_{{{a},{b}}}({z}): series error {error:.3g} above tolerance")

    x = -z
    if x < ML_SERIES_FIRST_LIMIT:
        order: List[Callable[[float, float, float, EvalTolerance], Approximation]] = [_series, _asymptotic]
    else:
        order = [_asymptotic, _series]

    best: Approximation = (math.nan, math.inf)
    for route in order:
        value, error = route(a, b, x if route is _asymptotic else z, tol)
        if math.isfinite(value) and tol.accepts(error, value):
            return value
        if error < best[1]:
            best = (value, error)

    try:
        value, _ = _integral(a, b, x, tol)
        return value
    except ConvergenceError as e:
        logger.warning(f"E_{{{a},{b}}}({z}): integral route failed ({e}); best estimate error {best[1]:.3g}")
        raise ConvergenceError(
            f"E_{{{a},{b}}}({z}) not resolved to tolerance (best error estimate {best[1]:.3g})"
        ) from e


def _forced(a: float, b: float, z: float, tol: EvalTolerance, branch: MLBranch) -> float:
    if branch is MLBranch.CLOSED_FORM:
        closed = _closed_form(a, b, z)
        if closed is None:
            raise UnsupportedParameterError(f"no closed form for E_{{{a},{b}}}")
        return closed
    if branch is MLBranch.SERIES:
        value, error = _series(a, b, z, tol)
    elif z > 0.0:
        raise DomainError(f"{branch.value} route needs a negative argument, got z={z}")
    elif z == 0.0:
        return reciprocal_gamma(b)
    elif branch is MLBranch.ASYMPTOTIC:
        value, error = _asymptotic(a, b, -z, tol)
    else:
        value, error = _integral(a, b, -z, tol)
    if not math.isfinite(value):
        raise ConvergenceError(f"E_{{{a},{b}}}({z}): {branch.value} route overflowed")
    logger.debug(f"E_{{{a},{b}}}({z}) via forced {branch.value}: error estimate {error:.3g}")
    return value


def _closed_form(a: float, b: float, z: float) -> Optional[float]:
    try:
        if a == 1.0:
            if b == 1.0:
                return math.exp(z)
            if b == 2.0:
                return math.expm1(z) / z if z != 0.0 else 1.0
            return None
        if a != 2.0 or b not in (1.0, 2.0, 3.0):
            return None
        if z <= 0.0:
            s = math.sqrt(-z)
            if b == 1.0:
                return math.cos(s)
            if b == 2.0:
                return math.sin(s) / s if s > 0.0 else 1.0
            return 2.0 * math.sin(0.5 * s) ** 2 / (s * s) if s > 0.0 else 0.5
        s = math.sqrt(z)
        if b == 1.0:
            return math.cosh(s)
        if b == 2.0:
            return math.sinh(s) / s
        return 2.0 * math.sinh(0.5 * s) ** 2 / (s * s)
    except OverflowError:
        return math.inf


def _series(a: float, b: float, z: float, tol: EvalTolerance) -> Approximation:
    """Taylor series with a rounding-plus-tail error estimate."""
    if z == 0.0:
        return reciprocal_gamma(b), 0.0
    log_abs_z = math.log(abs(z))
    peak = abs(z) ** (1.0 / a)
    negative = z < 0.0
    terms: List[float] = []
    abs_sum = 0.0
    for k in range(tol.max_terms):
        arg = a * k + b
        if is_nonpositive_integer(arg):
            continue
        log_mag = k * log_abs_z - log_abs_gamma(arg)
        if log_mag > _LOG_OVERFLOW:
            return math.nan, math.inf
        mag = math.exp(log_mag)
        sign = gamma_sign(arg)
        if negative and k % 2:
            sign = -sign
        terms.append(sign * mag)
        abs_sum += mag
        # consecutive ratio is about |z| / arg^a, below 1/2 past the peak
        if arg > peak + 2.0 and arg**a > 2.0 * abs(z) and mag <= 0.5 * _EPS * abs_sum:
            return math.fsum(terms), 4.0 * _EPS * abs_sum + 2.0 * mag
    value = math.fsum(terms)
    return value, math.inf


def _asymptotic(a: float, b: float, x: float, tol: EvalTolerance) -> Approximation:
    """Large-x expansion of E_{a,b}(-x): optimally truncated algebraic sum plus the exponential part."""
    log_x = math.log(x)
    terminating = a == math.floor(a) and b == math.floor(b)
    terms: List[float] = []
    error = math.inf
    prev_mag = math.inf
    for k in range(1, tol.max_terms):
        arg = b - a * k
        if is_nonpositive_integer(arg):
            if terminating:
                error = 0.0
                break
            continue
        mag = math.exp(-k * log_x - log_abs_gamma(arg))
        if mag > prev_mag:
            error = prev_mag
            break
        sign = gamma_sign(arg) * (1.0 if k % 2 else -1.0)
        terms.append(sign * mag)
        prev_mag = mag
        if mag <= 0.25 * _EPS * abs(math.fsum(terms)):
            error = mag
            break
    algebraic = math.fsum(terms)
    value = algebraic + _exponential_part(a, b, x)
    error += 4.0 * _EPS * (abs(algebraic) + abs(value))
    return value, error


def _exponential_part(a: float, b: float, x: float) -> float:
    """Residue contribution of the poles of the Hankel integrand (a >= 1)."""
    if a < 1.0:
        return 0.0
    big = x ** (1.0 / a)
    if a == 1.0:
        return big ** (1.0 - b) * math.exp(-big) * math.cos(math.pi * (1.0 - b))
    growth = big * math.cos(math.pi / a)
    if growth < -_LOG_OVERFLOW:
        return 0.0
    phase = math.pi * (1.0 - b) / a + big * math.sin(math.pi / a)
    return (2.0 / a) * big ** (1.0 - b) * math.exp(growth) * math.cos(phase)


def _integral(a: float, b: float, x: float, tol: EvalTolerance) -> Approximation:
    """Integral representations of E_{a,b}(-x), x > 0."""
    if a == 1.0:
        return _integral_a1(b, x, tol)
    if b >= a + 1.0:
        # E_{a,b}(-x) = (1/Gamma(b-a) - E_{a,b-a}(-x)) / x
        inner, error = _integral(a, b - a, x, tol)
        return (reciprocal_gamma(b - a) - inner) / x, error / x

    sin_b = math.sin(math.pi * b)
    sin_ba = math.sin(math.pi * (b - a))
    cos_a = math.cos(math.pi * a)

    def smooth(r: float) -> float:
        ra = r**a
        return math.exp(-r) * (ra * sin_b + x * sin_ba) / (ra * ra + 2.0 * x * ra * cos_a + x * x) / math.pi

    def full(r: float) -> float:
        return r ** (a - b) * smooth(r) if r > 0.0 else 0.0

    epsabs = 0.25 * tol.abs_tol
    epsrel = max(tol.rel_tol, 50.0 * _EPS)
    peak = x ** (1.0 / a)
    head_end = min(0.5 * peak, 30.0)
    mid_end = max(2.0 * peak, head_end) + 60.0

    head, e1 = quad_checked(
        smooth, 0.0, head_end, epsabs=epsabs, epsrel=epsrel, limit=ML_INTEGRAL_LIMIT,
        weight="alg", wvar=(a - b, 0.0), what=f"E_{{{a},{b}}} contour head",
    )
    mid, e2 = quad_checked(
        full, head_end, mid_end, epsabs=epsabs, epsrel=epsrel, limit=ML_INTEGRAL_LIMIT,
        points=[peak], what=f"E_{{{a},{b}}} contour",
    )
    tail, e3 = quad_checked(
        full, mid_end, math.inf, epsabs=epsabs, epsrel=epsrel, limit=ML_INTEGRAL_LIMIT,
        what=f"E_{{{a},{b}}} contour tail",
    )
    return _exponential_part(a, b, x) + head + mid + tail, e1 + e2 + e3


def _integral_a1(b: float, x: float, tol: EvalTolerance) -> Approximation:
    """E_{1,b}(-x) = (1/Gamma(b-1)) int_0^1 (1-v)^{b-2} e^{-xv} dv for b > 1."""
    if b == 1.0:
        return math.exp(-x), 0.0
    if b < 1.0:
        # E_{1,b}(z) = 1/Gamma(b) + z E_{1,b+1}(z)
        inner, error = _integral_a1(b + 1.0, x, tol)
        return reciprocal_gamma(b) - x * inner, x * error
    value, error = quad_checked(
        lambda v: math.exp(-x * v),
        0.0,
        1.0,
        epsabs=0.25 * tol.abs_tol,
        epsrel=max(tol.rel_tol, 50.0 * _EPS),
        limit=ML_INTEGRAL_LIMIT,
        weight="alg",
        wvar=(0.0, b - 2.0),
        what=f"E_{{1,{b}}} integral",
    )
    scale = reciprocal_gamma(b - 1.0)
    return scale * value, scale * error
