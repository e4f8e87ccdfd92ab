"""Gauss hypergeometric function on z <= 0 and the log-kernel integral built from it."""

import logging
import math
from typing import Optional

from scipy import special

from fracspde.errors import ConvergenceError, DomainError
from fracspde.specfun.gamma import gamma, is_nonpositive_integer

logger = logging.getLogger(__name__)

# below this distance from 1/2 the (2H-1)^{-2} pole swamps double precision
LOG_KERNEL_H_FLOOR = 1e-8


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """
    Evaluate 2F1(a, b; c; z) for real z < 1.

    Terminating series are summed exactly, which keeps polynomial cases
    with a non-positive integer c that the numerator cancels. Everything
    else goes to scipy.special.hyp2f1, whose linear transformations cover
    the whole half-line z <= 0.

    Args:
        a: First numerator parameter
        b: Second numerator parameter
        c: Denominator parameter
        z: Argument, z < 1

    Returns:
        The hypergeometric function value

    Raises:
        DomainError: If z >= 1, or c is a pole not cancelled by a terminating numerator
        ConvergenceError: If the evaluation does not return a finite value
    """
    if z >= 1.0:
        raise DomainError(f"hyp2f1 requires z < 1, got {z}")
    if z == 0.0:
        return 1.0

    degree = _terminating_degree(a, b)
    if is_nonpositive_integer(c) and (degree is None or degree > -c):
        raise DomainError(f"hyp2f1 denominator parameter c={c} is a pole")
    if degree is not None:
        return _finite_sum(a, b, c, z, degree)

    value = float(special.hyp2f1(a, b, c, z))
    if not math.isfinite(value):
        raise ConvergenceError(f"2F1({a}, {b}; {c}; {z}) did not evaluate to a finite value")
    return value


def _terminating_degree(a: float, b: float) -> Optional[int]:
    degrees = [int(-p) for p in (a, b) if is_nonpositive_integer(p)]
    return min(degrees) if degrees else None


def _finite_sum(a: float, b: float, c: float, z: float, degree: int) -> float:
    term = 1.0
    terms = [term]
    for k in range(degree):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        terms.append(term)
    return math.fsum(terms)


def log_kernel_integral(H: float, t: float) -> float:
    """
    Closed form of int_0^t (t-s)^{2H-2} log((t+s)/(t-s)) ds.

    Args:
        H: Hurst index in (1/2, 1)
        t: Upper limit, positive

    Returns:
        t^{2H-1} (Gamma(2H-1)/Gamma(1+2H) 2F1(1,1;1+2H;-1) + (2H-1)^{-2}),
        or inf when H is within 1e-8 of 1/2
    """
    if not 0.5 < H < 1.0:
        raise DomainError(f"log_kernel_integral requires H in (1/2, 1), got H={H}")
    if t <= 0.0:
        raise DomainError(f"log_kernel_integral requires t > 0, got t={t}")
    if H - 0.5 < LOG_KERNEL_H_FLOOR:
        logger.warning(f"log_kernel_integral: H={H} too close to 1/2, returning overflow")
        return math.inf
    two_h = 2.0 * H
    bracket = gamma(two_h - 1.0) / gamma(1.0 + two_h) * hyp2f1(1.0, 1.0, 1.0 + two_h, -1.0) + (two_h - 1.0) ** -2
    return t ** (two_h - 1.0) * bracket
