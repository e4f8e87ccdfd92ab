"""Gamma function helpers with explicit pole handling."""

import math

from scipy import special

from fracspde.errors import DomainError


def is_nonpositive_integer(x: float) -> bool:
    """Return True when x is one of 0, -1, -2, ..."""
    return x <= 0.0 and x == math.floor(x)


def gamma(x: float) -> float:
    """
    Evaluate the Gamma function.

    Args:
        x: Real argument, not a pole

    Returns:
        Gamma(x); overflows to inf beyond x ~ 171.6

    Raises:
        DomainError: If x is a non-positive integer
    """
    if is_nonpositive_integer(x):
        raise DomainError(f"Gamma has a pole at x={x}")
    return float(special.gamma(x))


def reciprocal_gamma(x: float) -> float:
    """1/Gamma(x), an entire function; exactly 0.0 at the poles of Gamma."""
    if is_nonpositive_integer(x):
        return 0.0
    return float(special.rgamma(x))


def reciprocal_gamma_derivative(x: float) -> float:
    """Derivative of 1/Gamma at x."""
    if is_nonpositive_integer(x):
        n = int(-x)
        return float((-1) ** n * math.factorial(n))
    return float(-special.digamma(x) * special.rgamma(x))


def log_abs_gamma(x: float) -> float:
    """log|Gamma(x)| for x off the poles."""
    if is_nonpositive_integer(x):
        raise DomainError(f"Gamma has a pole at x={x}")
    return math.lgamma(x)


def gamma_sign(x: float) -> float:
    """Sign of Gamma(x) for x off the poles."""
    if x > 0.0:
        return 1.0
    return float(special.gammasgn(x))
