"""Thin wrappers over scipy.integrate.quad that turn quadrature warnings into errors."""

import logging
import math
from typing import Callable, Optional, Sequence, Tuple

from scipy import integrate

from fracspde.errors import ConvergenceError
from fracspde.settings import DEFAULT_MAX_PANELS, OSCILLATORY_LIMLST

logger = logging.getLogger(__name__)

# quad reports its own error estimate pessimistically; accept up to this
# multiple of the requested accuracy when it flags a problem.
_SLACK = 100.0


def quad_checked(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    *,
    epsabs: float,
    epsrel: float,
    limit: int = DEFAULT_MAX_PANELS,
    points: Optional[Sequence[float]] = None,
    weight: Optional[str] = None,
    wvar: Optional[object] = None,
    what: str = "integral",
) -> Tuple[float, float]:
    """
    Integrate with scipy.integrate.quad and check the outcome.

    Args:
        func: Integrand
        lower: Lower limit
        upper: Upper limit (may be inf for Fourier weights)
        epsabs: Absolute accuracy target
        epsrel: Relative accuracy target
        limit: Subinterval budget
        points: Interior breakpoints (finite intervals only)
        weight: quad weight name ('alg', 'cos', 'sin', ...)
        wvar: Weight parameters
        what: Label used in log and error messages

    Returns:
        (value, error estimate)

    Raises:
        ConvergenceError: If quad failed and its error estimate misses the target
    """
    kwargs = {"epsabs": epsabs, "epsrel": epsrel, "limit": limit, "full_output": 1}
    if points is not None:
        inner = sorted(p for p in points if lower < p < upper)
        if inner:
            kwargs["points"] = inner
    if weight is not None:
        kwargs["weight"] = weight
        kwargs["wvar"] = wvar
        if weight in ("cos", "sin") and math.isinf(upper):
            kwargs["limlst"] = OSCILLATORY_LIMLST
            # QAWF ignores epsrel
            kwargs.pop("epsrel")

    result = integrate.quad(func, lower, upper, **kwargs)
    value, error = float(result[0]), float(result[1])

    if not math.isfinite(value):
        raise ConvergenceError(f"{what}: non-finite quadrature value on [{lower}, {upper}]")

    if len(result) > 3:
        message = result[3]
        target = max(epsabs, epsrel * abs(value))
        if error <= _SLACK * target:
            logger.debug(f"{what}: accepted with quad warning ({message.splitlines()[0]})")
        else:
            raise ConvergenceError(
                f"{what}: quadrature on [{lower}, {upper}] did not converge "
                f"(estimate {value:.6g}, error {error:.3g}): {message.splitlines()[0]}"
            )
    return value, error


def cosine_transform(
    func: Callable[[float], float],
    omega: float,
    split: float,
    *,
    epsabs: float,
    epsrel: float,
    limit: int = DEFAULT_MAX_PANELS,
    what: str = "cosine transform",
) -> float:
    """
    Compute the integral of func(x)·cos(omega·x) over [0, inf).

    The finite part [0, split] uses adaptive quadrature with the cosine
    factor inside the integrand; the tail uses QUADPACK's Fourier routine
    (panel integration between zeros with epsilon-algorithm acceleration).
    """
    return _fourier_transform(func, omega, split, "cos", epsabs=epsabs, epsrel=epsrel, limit=limit, what=what)


def sine_transform(
    func: Callable[[float], float],
    omega: float,
    split: float,
    *,
    epsabs: float,
    epsrel: float,
    limit: int = DEFAULT_MAX_PANELS,
    what: str = "sine transform",
) -> float:
    """Integral of func(x)·sin(omega·x) over [0, inf); same scheme as cosine_transform."""
    return _fourier_transform(func, omega, split, "sin", epsabs=epsabs, epsrel=epsrel, limit=limit, what=what)


def _fourier_transform(
    func: Callable[[float], float],
    omega: float,
    split: float,
    kind: str,
    *,
    epsabs: float,
    epsrel: float,
    limit: int,
    what: str,
) -> float:
    if omega < 0.0:
        sign = -1.0 if kind == "sin" else 1.0
        return sign * _fourier_transform(
            func, -omega, split, kind, epsabs=epsabs, epsrel=epsrel, limit=limit, what=what
        )
    trig = math.cos if kind == "cos" else math.sin
    if omega == 0.0:
        if kind == "sin":
            return 0.0
        head, _ = quad_checked(func, 0.0, split, epsabs=epsabs, epsrel=epsrel, limit=limit, what=what)
        tail, _ = quad_checked(func, split, math.inf, epsabs=epsabs, epsrel=epsrel, limit=limit, what=what)
        return head + tail

    # break the head at the zeros of the trigonometric factor
    period = math.pi / abs(omega)
    n_zeros = min(int(split / period), limit // 2)
    points = [k * period for k in range(1, n_zeros + 1)]
    head, _ = quad_checked(
        lambda x: func(x) * trig(omega * x),
        0.0,
        split,
        epsabs=epsabs,
        epsrel=epsrel,
        limit=max(limit, 2 * n_zeros + 50),
        points=points,
        what=what,
    )
    tail, _ = quad_checked(
        func, split, math.inf, epsabs=epsabs, epsrel=epsrel, limit=limit, weight=kind, wvar=omega, what=what
    )
    return head + tail
