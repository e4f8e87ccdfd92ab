"""
The fractional-noise energy of a time-localised wave,

    N(t, z) = z^{-alpha} int_R |tau|^{1-2H} |int_0^t e^{i tau s} sin(s z^{alpha/2} + eta) ds|^2 dtau,

and its comparison kernel.
"""

import functools
import logging
import math
from typing import Tuple

import numpy as np

from fracspde.errors import DomainError
from fracspde.settings import BALAN_GAUSS_NODES, BALAN_POLE_WINDOW
from fracspde.specfun.quadrature import quad_checked
from fracspde.variance.oscillatory import fourier_tail, zero_points
from fracspde.variance.params import DEFAULT_QUADRATURE, QuadratureSpec

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=32)
def _gauss_legendre(count: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(count)


def _check(H: float, t: float, a: float) -> None:
    if not 0.0 < H < 1.0:
        raise DomainError(f"H must lie in (0, 1), got {H}")
    if t <= 0.0 or a <= 0.0:
        raise DomainError(f"need t > 0 and a > 0, got t={t}, a={a}")


class _Bracket:
    """
    |int_0^a e^{i s tau / a} sin(s + eta) ds|^2 (tau^2 - a^2)^2 / a^4 written as
    B0(tau) - 2 (tau/a) sin(a) sin(tau) - 2 B2(tau) cos(tau).
    """

    def __init__(self, eta: float, a: float):
        self.eta = eta
        self.a = a
        self.c, self.s = math.cos(eta), math.sin(eta)
        self.C, self.S = math.cos(a + eta), math.sin(a + eta)
        self.sin_a = math.sin(a)

    def smooth(self, tau: float) -> float:
        k = tau / self.a
        return self.c**2 + self.C**2 + k * k * (self.s**2 + self.S**2)

    def sine_amplitude(self, tau: float) -> float:
        return -2.0 * (tau / self.a) * self.sin_a

    def cosine_amplitude(self, tau: float) -> float:
        k = tau / self.a
        return -2.0 * (k * k * self.s * self.S + self.c * self.C)

    def value(self, tau: float) -> float:
        return self.smooth(tau) + self.sine_amplitude(tau) * math.sin(tau) + self.cosine_amplitude(tau) * math.cos(tau)

    def quotient(self, tau: float) -> float:
        """bracket / (tau^2 - a^2)^2, exact near the removable singularity tau = a."""
        a = self.a
        if abs(tau - a) > BALAN_POLE_WINDOW * a:
            return self.value(tau) / (tau * tau - a * a) ** 2
        nodes, weights = _gauss_legendre(BALAN_GAUSS_NODES + int(2.0 * a))
        s = 0.5 * a * (nodes + 1.0)
        integrand = np.exp(1j * s * tau / a) * np.sin(s + self.eta)
        finite = 0.5 * a * np.dot(weights, integrand)
        return float(abs(finite) ** 2) / a**4


def balan_A(eta: float, H: float, t: float, a: float, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """
    A(t, a) = t^{2H-2} int_R |tau|^{1-2H} bracket(tau) / (tau^2 - a^2)^2 dtau.

    The integrand is even in tau. Near tau = a the quotient is replaced by
    the finite Fourier integral it came from; beyond 2a + 2 pi the sine and
    cosine parts go through the Fourier routine.
    """
    _check(H, t, a)
    br = _Bracket(eta, a)
    power = 1.0 - 2.0 * H
    below, above = a * (1.0 - BALAN_POLE_WINDOW), a * (1.0 + BALAN_POLE_WINDOW)
    tail_start = 2.0 * a + 2.0 * math.pi

    def weighted(tau: float) -> float:
        q.check()
        return tau**power * br.quotient(tau)

    head, _ = quad_checked(
        br.quotient, 0.0, below, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_panels, weight="alg",
        wvar=(power, 0.0), what="energy integral head",
    )
    pole, _ = quad_checked(
        weighted, below, above, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_panels, what="energy integral pole"
    )
    middle, _ = quad_checked(
        weighted, above, tail_start, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_panels,
        points=zero_points(above, tail_start, 1.0, q), what="energy integral middle",
    )

    def envelope(tau: float) -> float:
        return tau**power / (tau * tau - a * a) ** 2

    smooth, _ = quad_checked(
        lambda tau: envelope(tau) * br.smooth(tau), tail_start, math.inf, epsabs=q.abs_tol, epsrel=q.rel_tol,
        limit=q.max_panels, what="energy integral smooth tail",
    )
    sine = fourier_tail(lambda tau: envelope(tau) * br.sine_amplitude(tau), tail_start, 1.0, 0.5 * math.pi, q)
    cosine = fourier_tail(lambda tau: envelope(tau) * br.cosine_amplitude(tau), tail_start, 1.0, 0.0, q)

    total = 2.0 * (head + pole + middle + smooth + sine + cosine)
    logger.debug(f"A(eta={eta}, H={H}, a={a}) = {total:.6g} t^(2H-2)")
    return t ** (2.0 * H - 2.0) * total


def balan_N(alpha: float, eta: float, H: float, t: float, z: float, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """
    Compute N(t, z) = t^4 A(t, t z^{alpha/2}).

    Raises:
        DomainError: If t or z is not positive or H is outside (0, 1)
    """
    if alpha <= 0.0 or z <= 0.0:
        raise DomainError(f"need alpha > 0 and z > 0, got alpha={alpha}, z={z}")
    return t**4 * balan_A(eta, H, t, t * z ** (alpha / 2.0), q)


def balan_kernel(H: float, t: float, a: float) -> float:
    """
    Comparison kernel (1 / (t sqrt(a^2 + t^2))) int_R |tau/t|^{1-2H} / (tau^2 + a^2 + t^2) dtau,

    in closed form t^{2H-1} pi (a^2 + t^2)^{-H} / (sin(pi H) t sqrt(a^2 + t^2)).
    """
    _check(H, t, a)
    m2 = a * a + t * t
    return t ** (2.0 * H - 1.0) * math.pi * m2 ** (-H) / (math.sin(math.pi * H) * t * math.sqrt(m2))
