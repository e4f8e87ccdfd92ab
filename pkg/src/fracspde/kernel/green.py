"""Physical-space fundamental solution G = Y through radial inverse Fourier transforms."""

import logging
import math
from typing import Optional, Tuple

from fracspde.errors import DomainError, UnsupportedParameterError
from fracspde.kernel.params import EquationParams
from fracspde.kernel.symbols import green_symbol
from fracspde.settings import (
    DEFAULT_MAX_PANELS,
    DEFAULT_QUAD_ABS_TOL,
    DEFAULT_QUAD_REL_TOL,
    KERNEL_FOURIER_SPLIT,
    SUPPORTED_PHYSICAL_DIMENSIONS,
)
from fracspde.specfun.params import EvalTolerance
from fracspde.specfun.quadrature import cosine_transform, quad_checked, sine_transform

logger = logging.getLogger(__name__)

KERNEL_TOLERANCE = EvalTolerance(abs_tol=DEFAULT_QUAD_ABS_TOL, rel_tol=DEFAULT_QUAD_REL_TOL)


def profile_constants(p: EquationParams) -> Tuple[float, float]:
    """
    Constants (C1, C2) in G(1, x) = C1 |x|^{-d} f(C2 |x|^alpha).

    C1 = pi^{-d/2} and C2 = 2^{1-alpha} / nu.
    """
    return math.pi ** (-p.d / 2.0), 2.0 ** (1.0 - p.alpha) / p.nu


def symbol_scale(p: EquationParams, t: float) -> float:
    """Frequency at which the symbol argument reaches -1."""
    return (2.0 / (p.nu * t**p.beta)) ** (1.0 / p.alpha)


def green_function(p: EquationParams, t: float, r: float, tol: Optional[EvalTolerance] = None) -> float:
    """
    Evaluate G(t, x) at |x| = r.

    d = 1: G = (1/pi) int_0^inf cos(xi r) Ghat(t, xi) dxi.
    d = 3: G = (1/(2 pi^2 r)) int_0^inf xi sin(xi r) Ghat(t, xi) dxi.

    Args:
        p: Equation parameters, beta in (0, 2) and d in {1, 3}
        t: Time, positive
        r: Distance from the origin (the kernel is radial; the sign is ignored)
        tol: Quadrature accuracy target

    Returns:
        G(t, x); inf at r = 0 when the kernel is singular there (alpha <= d)

    Raises:
        UnsupportedParameterError: If d is not 1 or 3, or beta = 2
        DomainError: If t <= 0
    """
    tol = tol or KERNEL_TOLERANCE
    if p.d not in SUPPORTED_PHYSICAL_DIMENSIONS:
        raise UnsupportedParameterError(
            f"physical-space kernel supports d in {SUPPORTED_PHYSICAL_DIMENSIONS}, got d={p.d}"
        )
    if p.beta >= 2.0:
        raise UnsupportedParameterError("physical-space kernel requires beta < 2")
    if t <= 0.0:
        raise DomainError(f"time must be positive, got t={t}")
    r = abs(r)

    # algebraic decay rate of the symbol at large |xi|
    decay = 2.0 * p.alpha if p.gamma == 0.0 else p.alpha
    if p.d == 3 and decay <= 1.0:
        raise UnsupportedParameterError(f"symbol decays too slowly for the d=3 sine transform (rate {decay})")

    split = KERNEL_FOURIER_SPLIT * symbol_scale(p, t)

    def symbol(xi: float) -> float:
        return green_symbol(p, t, xi)

    if r == 0.0:
        if p.alpha <= p.d:
            return math.inf
        weight = symbol if p.d == 1 else (lambda xi: xi * xi * symbol(xi))
        head, _ = quad_checked(weight, 0.0, split, epsabs=tol.abs_tol, epsrel=tol.rel_tol, what="G(t,0) head")
        tail, _ = quad_checked(weight, split, math.inf, epsabs=tol.abs_tol, epsrel=tol.rel_tol, what="G(t,0) tail")
        scale = 1.0 / math.pi if p.d == 1 else 1.0 / (2.0 * math.pi**2)
        return scale * (head + tail)

    if p.d == 1:
        value = cosine_transform(
            symbol, r, split, epsabs=tol.abs_tol, epsrel=tol.rel_tol, limit=DEFAULT_MAX_PANELS, what="G cosine transform"
        )
        return value / math.pi
    value = sine_transform(
        lambda xi: xi * symbol(xi),
        r,
        split,
        epsabs=tol.abs_tol,
        epsrel=tol.rel_tol,
        limit=DEFAULT_MAX_PANELS,
        what="G sine transform",
    )
    return value / (2.0 * math.pi**2 * r)


def scaled_green_function(p: EquationParams, t: float, r: float, tol: Optional[EvalTolerance] = None) -> float:
    """G(t, x) from G(1, .) through the scaling law G(t, x) = t^{beta+gamma-1-d beta/alpha} G(1, t^{-beta/alpha} x)."""
    exponent = p.beta + p.gamma - 1.0 - p.d * p.beta / p.alpha
    return t**exponent * green_function(p, 1.0, t ** (-p.beta / p.alpha) * r, tol)


def kernel_profile(p: EquationParams, z: float, tol: Optional[EvalTolerance] = None) -> float:
    """
    The profile f(z) recovered from the physical-space kernel.

    Args:
        p: Equation parameters
        z: Positive argument
        tol: Quadrature accuracy target

    Returns:
        f(z) = G(1, x) |x|^d / C1 with C2 |x|^alpha = z
    """
    if z <= 0.0:
        raise DomainError(f"profile argument must be positive, got z={z}")
    c1, c2 = profile_constants(p)
    x = (z / c2) ** (1.0 / p.alpha)
    return green_function(p, 1.0, x, tol) * x**p.d / c1
