"""Radial Fourier symbols of the fundamental solutions."""

from typing import Union

from fracspde.errors import DomainError, UnsupportedParameterError
from fracspde.kernel.params import EquationParams, KernelKind
from fracspde.specfun.mittag_leffler import ml_eval
from fracspde.specfun.params import DEFAULT_TOLERANCE, EvalTolerance


def symbol_argument(p: EquationParams, t: float, r: float) -> float:
    """The common Mittag-Leffler argument -nu t^beta r^alpha / 2."""
    return -0.5 * p.nu * t**p.beta * r**p.alpha


def fourier_kernel(
    kind: Union[KernelKind, str],
    p: EquationParams,
    t: float,
    r: float,
    tol: EvalTolerance = DEFAULT_TOLERANCE,
) -> float:
    """
    Evaluate the Fourier transform of Z, Z* or Y at |xi| = r.

    Args:
        kind: Which fundamental solution
        p: Equation parameters
        t: Time, positive
        r: Frequency modulus, non-negative
        tol: Mittag-Leffler accuracy target

    Returns:
        Y: t^{beta+gamma-1} E_{beta,beta+gamma}(w);
        Z: t^{ceil(beta)-1} E_{beta,ceil(beta)}(w);
        Z*: t E_{beta,2}(w), with w = -nu t^beta r^alpha / 2

    Raises:
        DomainError: If t <= 0 or r < 0
        UnsupportedParameterError: For Z* with beta <= 1
    """
    kind = KernelKind(kind)
    if t <= 0.0:
        raise DomainError(f"time must be positive, got t={t}")
    if r < 0.0:
        raise DomainError(f"frequency modulus must be non-negative, got r={r}")

    w = symbol_argument(p, t, r)
    if kind is KernelKind.Y:
        b = p.beta + p.gamma
        return t ** (b - 1.0) * ml_eval(p.beta, b, w, tol)
    if kind is KernelKind.Z:
        b = float(p.ceil_beta)
        return t ** (b - 1.0) * ml_eval(p.beta, b, w, tol)
    if p.beta <= 1.0:
        raise UnsupportedParameterError(f"Z* is defined for beta in (1, 2], got beta={p.beta}")
    return t * ml_eval(p.beta, 2.0, w, tol)


def green_symbol(p: EquationParams, t: float, r: float, tol: EvalTolerance = DEFAULT_TOLERANCE) -> float:
    """Fourier symbol of G = Y without argument checks (integrand use)."""
    b = p.beta + p.gamma
    return t ** (b - 1.0) * ml_eval(p.beta, b, -0.5 * p.nu * t**p.beta * r**p.alpha, tol)
