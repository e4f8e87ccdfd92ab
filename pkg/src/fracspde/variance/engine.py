"""
Covariance engine of the solution field.

Write Yhat(v, r) = v^{b-1} E_{beta,b}(-c r^alpha v^beta) for the symbol of
the fundamental solution (b = beta + gamma, c = nu/2) and
Y_mu(v, r) = v^{b+mu-1} E_{beta,b+mu}(-c r^alpha v^beta) for its
Riemann-Liouville integral of order mu = 2H - 1. The fractional time
kernel satisfies

    a_H int int |u1 - u2|^{2H-2} f(u1) f(u2) du1 du2 = w_H int f(u) (I^mu_- f)(u) du,

with w_H = 2H Gamma(2H), and I^mu_- maps Yhat(t - .) to Y_mu(t - .). Every
second moment is therefore a single time integral against the radial
product P(v1, v2) = int r^{ell-1} Yhat(v1, r) Y_mu(v2, r) dr, which by
homogeneity reduces to a tabulated function of v1/v2 (temporal
quantities), or a single radial integral against the tabulated profile
q(L) (spatial quantities).
"""

import functools
import logging
import math
import threading
from typing import List, Optional, Tuple

import numpy as np
from scipy import interpolate, special

from fracspde.errors import DomainError, UnsupportedParameterError
from fracspde.kernel.params import EquationParams
from fracspde.settings import (
    ENGINE_CACHE_SIZE,
    KERNEL_FOURIER_SPLIT,
    PROFILE_GRID_POINTS,
    PROFILE_LOG_MAX,
    PROFILE_LOG_MIN,
    RADIAL_GRID_POINTS,
    RADIAL_LOGIT_MAX,
    RADIAL_LOGIT_MIN,
)
from fracspde.solvability.exponents import exponents
from fracspde.solvability.params import NoiseParams
from fracspde.specfun.gamma import gamma, reciprocal_gamma
from fracspde.specfun.mittag_leffler import ml_eval
from fracspde.specfun.quadrature import cosine_transform, quad_checked, sine_transform
from fracspde.variance.constants import radial_constant, require_solvable, surface_constant
from fracspde.variance.mittag_integrals import ml_product
from fracspde.variance.params import DEFAULT_QUADRATURE, QuadratureSpec

logger = logging.getLogger(__name__)


def fractional_weight(H: float) -> float:
    """w_H = 2H Gamma(2H); equals 1 at H = 1/2."""
    return 2.0 * H * gamma(2.0 * H)


class RadialProductTable:
    """
    M(s1, s2) = int_0^inf x^theta E_{beta,b}(-s1 x) E_{beta,b+mu}(-s2 x) dx.

    M is homogeneous of degree -(theta + 1), so it is stored as its
    diagonal value plus two deviation curves M(rho, 1) - M(1, 1) and
    M(1, rho) - M(1, 1) for rho in (0, 1), splined in logit(rho).
    """

    def __init__(
        self, beta: float, b: float, mu: float, theta: float, q: QuadratureSpec, diagonal: Optional[float] = None
    ):
        self.beta = beta
        self.b = b
        self.mu = mu
        self.theta = theta
        self.degree = theta + 1.0
        self._reg = max(theta, 0.0)

        self.diagonal = ml_product(beta, b, b + mu, theta, 1.0, 1.0, q) if diagonal is None else diagonal
        self._u = np.linspace(RADIAL_LOGIT_MIN, RADIAL_LOGIT_MAX, RADIAL_GRID_POINTS)
        rho = special.expit(self._u)
        left, right = [], []
        for r in rho:
            q.check()
            r = float(r)
            left.append((ml_product(beta, b, b + mu, theta, r, 1.0, q) - self.diagonal) * r**self._reg)
            right.append((ml_product(beta, b, b + mu, theta, 1.0, r, q) - self.diagonal) * r**self._reg)
        self._left = interpolate.CubicSpline(self._u, np.array(left))
        self._right = interpolate.CubicSpline(self._u, np.array(right))
        self._rho_max = float(rho[-1])
        logger.debug(f"radial product table: M(1,1) = {self.diagonal:.12g}, {len(rho)} nodes per side")

    def deviation(self, rho: float, first_smaller: bool) -> float:
        """M(rho, 1) - M(1, 1) (first_smaller) or M(1, rho) - M(1, 1), for rho in (0, 1]."""
        if rho >= 1.0:
            return 0.0
        spline = self._left if first_smaller else self._right
        if rho > self._rho_max:
            edge = float(spline(self._u[-1])) / self._rho_max**self._reg
            return edge * (1.0 - rho) / (1.0 - self._rho_max)
        u = max(float(special.logit(rho)), self._u[0])
        return float(spline(u)) / rho**self._reg

    def value(self, s1: float, s2: float) -> float:
        """M(s1, s2) for positive s1, s2."""
        if s1 <= s2:
            return s2 ** (-self.degree) * (self.diagonal + self.deviation(s1 / s2, True))
        return s1 ** (-self.degree) * (self.diagonal + self.deviation(s2 / s1, False))


class SpatialProfile:
    """
    q(L) = w_H int_0^L w^{2b+mu-2} E_{beta,b}(-w^beta) E_{beta,b+mu}(-w^beta) dw,

    so that the temporal energy of the symbol at frequency r up to time t is
    lambda^{2-2b-2H} q(lambda t) with lambda = (c r^alpha)^{1/beta}.
    """

    def __init__(self, beta: float, b: float, mu: float, weight: float, q: QuadratureSpec):
        self.beta = beta
        self.b = b
        self.mu = mu
        self.weight = weight
        self.power = 2.0 * b + mu - 2.0

        def integrand(w: float) -> float:
            q.check()
            return weight * w**self.power * ml_eval(beta, b, -(w**beta)) * ml_eval(beta, b + mu, -(w**beta))

        logs = np.linspace(PROFILE_LOG_MIN, PROFILE_LOG_MAX, PROFILE_GRID_POINTS)
        nodes = np.exp(logs)
        first, _ = quad_checked(
            lambda w: weight * ml_eval(beta, b, -(w**beta)) * ml_eval(beta, b + mu, -(w**beta)),
            0.0,
            float(nodes[0]),
            epsabs=0.0,
            epsrel=q.rel_tol,
            limit=q.max_panels,
            weight="alg",
            wvar=(self.power, 0.0),
            what="profile origin",
        )
        values = [first]
        for lower, upper in zip(nodes[:-1], nodes[1:]):
            step, _ = quad_checked(
                integrand, float(lower), float(upper), epsabs=0.0, epsrel=q.rel_tol, limit=q.max_panels,
                what="profile step",
            )
            values.append(values[-1] + step)
        self._logs = logs
        self._spline = interpolate.CubicSpline(logs, np.log(values))
        self._first = values[0]
        self._last = values[-1]
        self._l_min, self._l_max = float(nodes[0]), float(nodes[-1])
        self._tail_terms = self._asymptotic_terms()
        logger.debug(f"spatial profile: q({self._l_max:.4g}) = {self._last:.12g}")

    def _asymptotic_terms(self) -> List[Tuple[float, float]]:
        """(coefficient, power) pairs of the non-oscillating large-w integrand."""
        beta, b, mu = self.beta, self.b, self.mu
        terms: List[Tuple[float, float]] = []
        if beta == 2.0:
            # mean of the product of the two waves (r w)^{1-b} cos(w - pi (b-1)/2)
            terms.append((0.5 * math.cos(0.5 * math.pi * mu), self.power + 2.0 - 2.0 * b - mu))
        first = [(-1.0) ** k * reciprocal_gamma(b - k * beta) for k in (1, 2)]
        second = [(-1.0) ** k * reciprocal_gamma(b + mu - k * beta) for k in (1, 2)]
        for i, ci in enumerate(first):
            for j, cj in enumerate(second):
                if ci * cj != 0.0:
                    terms.append((ci * cj, self.power - (i + j + 2) * beta))
        return [(self.weight * c, e) for c, e in terms]

    def __call__(self, L: float) -> float:
        if L <= 0.0:
            return 0.0
        if L < self._l_min:
            return self._first * (L / self._l_min) ** (self.power + 1.0)
        if L <= self._l_max:
            return float(math.exp(self._spline(math.log(L))))
        extra = 0.0
        for c, e in self._tail_terms:
            if e == -1.0:
                extra += c * math.log(L / self._l_max)
            else:
                extra += c * (L ** (e + 1.0) - self._l_max ** (e + 1.0)) / (e + 1.0)
        return self._last + extra


def _angular_average(d: int) -> str:
    if d in (1, 3):
        return "cos" if d == 1 else "sinc"
    raise UnsupportedParameterError(f"spatial covariances are implemented for d in (1, 3), got d={d}")


class CovarianceEngine:
    """Second moments of the solution for one parameter set."""

    def __init__(self, p: EquationParams, n: NoiseParams, q: QuadratureSpec = DEFAULT_QUADRATURE):
        require_solvable(p, n)
        self.p = p
        self.n = n
        self.q = q
        self.b = p.beta + p.gamma
        self.mu = 2.0 * n.H - 1.0
        self.theta = n.ell / p.alpha - 1.0
        self.rho0 = exponents(p, n).rho0
        self.weight = fractional_weight(n.H)
        self.scale = 2.0 * math.pi * surface_constant(p.d)
        self.kappa = radial_constant(p, n)
        self._lock = threading.Lock()
        self._table: Optional[RadialProductTable] = None
        self._profile: Optional[SpatialProfile] = None

    @property
    def table(self) -> RadialProductTable:
        with self._lock:
            if self._table is None:
                logger.info(f"tabulating the radial product for {self.p.to_dict()} with {self.n.to_dict()}")
                self._table = RadialProductTable(self.p.beta, self.b, self.mu, self.theta, self.q, self.diagonal)
            return self._table

    @property
    def profile(self) -> SpatialProfile:
        with self._lock:
            if self._profile is None:
                logger.info(f"tabulating the spatial profile for {self.p.to_dict()} with {self.n.to_dict()}")
                self._profile = SpatialProfile(self.p.beta, self.b, self.mu, self.weight, self.q)
            return self._profile

    @functools.cached_property
    def diagonal(self) -> float:
        """M(1, 1), the only table entry the variance needs."""
        return ml_product(self.p.beta, self.b, self.b + self.mu, self.theta, 1.0, 1.0, self.q)

    # temporal quantities

    def variance(self, t: float) -> float:
        """E[u(t,x)^2] through the diagonal of the radial product."""
        if t < 0.0:
            raise DomainError(f"time must be non-negative, got t={t}")
        if t == 0.0:
            return 0.0
        return self._prefactor * self.diagonal * t ** (2.0 * self.rho0) / (2.0 * self.rho0)

    @property
    def _prefactor(self) -> float:
        return self.scale * self.weight * self.kappa

    def _cross(self, v1: float, v2: float) -> float:
        """P(v1, v2) - M(1,1) v1^{b-1} v2^{b+mu-1} max(v1, v2)^{-e}: the deviation part of the radial product."""
        table = self.table
        beta = self.p.beta
        e = beta * table.degree
        big = max(v1, v2)
        ratio = (min(v1, v2) / big) ** beta
        return v1 ** (self.b - 1.0) * v2 ** (self.b + self.mu - 1.0) * big ** (-e) * table.deviation(ratio, v1 <= v2)

    def time_increment(self, t: float, s: float) -> float:
        """E[(u(t,x) - u(s,x))^2] for 0 <= s, t."""
        if t < 0.0 or s < 0.0:
            raise DomainError(f"times must be non-negative, got t={t}, s={s}")
        if t == s:
            return 0.0
        t, s = max(t, s), min(t, s)
        h = t - s
        if s == 0.0:
            return self.variance(t)
        table = self.table

        b, mu = self.b, self.mu
        e = self.p.beta * table.degree
        diag_power = 2.0 * b + mu - 2.0 - e

        def second_difference(v: float) -> float:
            self.q.check()
            a = v + h
            smooth = (
                a**diag_power
                - a ** (b - 1.0 - e) * v ** (b + mu - 1.0)
                - v ** (b - 1.0) * a ** (b + mu - 1.0 - e)
                + v**diag_power
            )
            return table.diagonal * smooth - self._cross(a, v) - self._cross(v, a)

        points = [h] if h < s else None
        body, _ = quad_checked(
            second_difference, 0.0, s, epsabs=0.0, epsrel=self.q.rel_tol, limit=self.q.max_panels, points=points,
            what="time increment",
        )
        head = table.diagonal * h ** (2.0 * self.rho0) / (2.0 * self.rho0)
        return self._prefactor * (head + body)

    def time_covariance(self, t: float, s: float) -> float:
        """E[u(t,x) u(s,x)]."""
        return 0.5 * (self.variance(t) + self.variance(s) - self.time_increment(t, s))

    # spatial quantities

    def _frequency_scale(self, r: float) -> float:
        return (0.5 * self.p.nu * r**self.p.alpha) ** (1.0 / self.p.beta)

    def energy(self, t: float, r: float) -> float:
        """w_H int_0^t Yhat(v, r) Y_mu(v, r) dv, the temporal energy at frequency r."""
        if r == 0.0:
            return self.weight * t ** (2.0 * self.b + self.mu - 1.0) / (
                (2.0 * self.b + self.mu - 1.0) * gamma(self.b) * gamma(self.b + self.mu)
            )
        lam = self._frequency_scale(r)
        return lam ** (2.0 - 2.0 * self.b - 2.0 * self.n.H) * self.profile(lam * t)

    def _radial_scale(self, t: float) -> float:
        return (2.0 / (self.p.nu * t**self.p.beta)) ** (1.0 / self.p.alpha)

    def profile_variance(self, t: float) -> float:
        """E[u(t,x)^2] through the spatial profile (an independent route to variance())."""
        q = self.q
        ell = self.n.ell
        r0 = self._radial_scale(t)
        head, _ = quad_checked(
            lambda r: self.energy(t, r), 0.0, r0, epsabs=0.0, epsrel=q.rel_tol, limit=q.max_panels, weight="alg",
            wvar=(ell - 1.0, 0.0), what="profile variance head",
        )
        tail, _ = quad_checked(
            lambda r: r ** (ell - 1.0) * self.energy(t, r), r0, math.inf, epsabs=0.0, epsrel=q.rel_tol,
            limit=q.max_panels, what="profile variance tail",
        )
        return self.scale * (head + tail)

    def space_covariance(self, t: float, delta: float) -> float:
        """E[u(t,x) u(t,y)] with |x - y| = delta."""
        if t <= 0.0:
            raise DomainError(f"time must be positive, got t={t}")
        if delta == 0.0:
            return self.profile_variance(t)
        kind = _angular_average(self.p.d)
        ell = self.n.ell
        split = KERNEL_FOURIER_SPLIT * max(self._radial_scale(t), math.pi / delta)
        q = self.q
        if kind == "cos":
            value = cosine_transform(
                lambda r: r ** (ell - 1.0) * self.energy(t, r), delta, split, epsabs=q.abs_tol, epsrel=q.rel_tol,
                limit=q.max_panels, what="space covariance",
            )
        else:
            value = sine_transform(
                lambda r: r ** (ell - 2.0) * self.energy(t, r), delta, split, epsabs=q.abs_tol, epsrel=q.rel_tol,
                limit=q.max_panels, what="space covariance",
            ) / delta
        return self.scale * value

    def space_increment(self, t: float, delta: float) -> float:
        """E[(u(t,x) - u(t,y))^2] with |x - y| = delta."""
        if delta == 0.0:
            return 0.0
        return 2.0 * (self.profile_variance(t) - self.space_covariance(t, delta))

    # general pairs

    def covariance(self, t: float, s: float, delta: float) -> float:
        """E[u(t,x) u(s,y)] with |x - y| = delta."""
        if t <= 0.0 or s <= 0.0:
            raise DomainError(f"times must be positive, got t={t}, s={s}")
        if delta == 0.0:
            if t == s:
                return self.variance(t)
            return self.time_covariance(t, s)
        if t == s:
            return self.space_covariance(t, delta)
        return self._mixed_covariance(max(t, s), min(t, s), delta)

    def _mixed_covariance(self, t: float, s: float, delta: float) -> float:
        logger.debug(f"mixed covariance by nested quadrature (t={t}, s={s}, delta={delta})")
        kind = _angular_average(self.p.d)
        beta, b, mu, h = self.p.beta, self.b, self.mu, t - s
        q = self.q

        def cross_energy(r: float) -> float:
            c = 0.5 * self.p.nu * r**self.p.alpha

            def symbol(v: float) -> float:
                return v ** (b - 1.0) * ml_eval(beta, b, -c * v**beta)

            def lifted(v: float) -> float:
                return v ** (b + mu - 1.0) * ml_eval(beta, b + mu, -c * v**beta)

            value, _ = quad_checked(
                lambda v: symbol(v + h) * lifted(v) + symbol(v) * lifted(v + h), 0.0, s, epsabs=0.0,
                epsrel=q.rel_tol, limit=q.max_panels, what="mixed covariance time integral",
            )
            return 0.5 * self.weight * value

        ell = self.n.ell
        split = KERNEL_FOURIER_SPLIT * max(self._radial_scale(t), math.pi / delta)
        if kind == "cos":
            value = cosine_transform(
                lambda r: r ** (ell - 1.0) * cross_energy(r), delta, split, epsabs=q.abs_tol, epsrel=q.rel_tol,
                limit=q.max_panels, what="mixed covariance",
            )
        else:
            value = sine_transform(
                lambda r: r ** (ell - 2.0) * cross_energy(r), delta, split, epsabs=q.abs_tol, epsrel=q.rel_tol,
                limit=q.max_panels, what="mixed covariance",
            ) / delta
        return self.scale * value


_ENGINES_LOCK = threading.Lock()


@functools.lru_cache(maxsize=ENGINE_CACHE_SIZE)
def _shared_engine(p: EquationParams, n: NoiseParams, q: QuadratureSpec) -> CovarianceEngine:
    return CovarianceEngine(p, n, q)


def covariance_engine(p: EquationParams, n: NoiseParams, q: QuadratureSpec = DEFAULT_QUADRATURE) -> CovarianceEngine:
    """Shared engine per (parameters, quadrature); the most recently used ENGINE_CACHE_SIZE are kept."""
    with _ENGINES_LOCK:
        return _shared_engine(p, n, q)
