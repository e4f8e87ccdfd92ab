"""
Expansion of the kernel profile f(z) at z = 0.

f is the Mellin-Barnes integral of
    Gamma(d/2 + alpha s/2) Gamma(1 + s) Gamma(-s) / (Gamma(-alpha s/2) Gamma(beta + gamma + beta s)) z^{-s},
and its small-z expansion collects the residues at the left poles
s = -(d + 2l)/alpha and s = -(l + 1). When alpha = (2 l1 + d)/(l2 + 1) the
two families meet in a double pole, which contributes a z^{l2+1} log z term
together with a companion z^{l2+1} term.
"""

import logging
import math
from typing import Any, Dict, List, Optional, Set, Tuple

from scipy import special

from fracspde.errors import DomainError, UnsupportedParameterError
from fracspde.kernel.params import EquationParams
from fracspde.settings import ARITHMETIC_REL_TOL
from fracspde.specfun.gamma import reciprocal_gamma, reciprocal_gamma_derivative

logger = logging.getLogger(__name__)

GENERIC = "generic"
ARITHMETIC = "arithmetic"


class SeriesTerm:
    """One term coefficient * z^exponent * (log z)^log_power."""

    def __init__(self, exponent: float, log_power: int, coefficient: float, source: str):
        self.exponent = exponent
        self.log_power = log_power
        self.coefficient = coefficient
        self.source = source

    def value(self, z: float) -> float:
        term = self.coefficient * z**self.exponent
        if self.log_power:
            term *= math.log(z) ** self.log_power
        return term

    def sort_key(self) -> Tuple[float, int]:
        return (self.exponent, self.log_power)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "exp": self.exponent,
            "logpow": self.log_power,
            "coef": self.coefficient,
            "source": self.source,
        }


class OriginExpansion:
    """Truncated small-z expansion of f with its regime classification."""

    def __init__(
        self,
        params: EquationParams,
        terms: List[SeriesTerm],
        regime: str,
        collisions: List[Tuple[int, int]],
        excluded_indices: Dict[str, List[int]],
        first_collision: Optional[Tuple[int, int]],
        tolerance_based: bool,
        search_bound: int,
        search_complete: bool,
    ):
        self.params = params
        self.terms = terms
        self.regime = regime
        self.collisions = collisions
        self.excluded_indices = excluded_indices
        self.first_collision = first_collision
        self.tolerance_based = tolerance_based
        self.search_bound = search_bound
        self.search_complete = search_complete

    def evaluate(self, z: float, n_terms: Optional[int] = None, include_log: bool = True) -> float:
        """Partial sum of the first n_terms terms at z > 0."""
        if z <= 0.0:
            raise DomainError(f"expansion is evaluated on z > 0, got z={z}")
        selected = self.terms if n_terms is None else self.terms[:n_terms]
        return math.fsum(term.value(z) for term in selected if include_log or term.log_power == 0)

    def log_coefficient(self) -> Optional[float]:
        """Coefficient of the first z^{l2*+1} log z term, if any."""
        for term in self.terms:
            if term.log_power == 1:
                return term.coefficient
        return None

    def leading_singularity(self) -> Tuple[float, int]:
        """
        Singularity class of G(1, x) at x = 0.

        Returns:
            (theta, log_power) such that G(1, x) behaves like |x|^{-theta} (log|x|)^log_power
        """
        for term in self.terms:
            if term.coefficient != 0.0:
                return self.params.d - self.params.alpha * term.exponent, term.log_power
        raise DomainError("expansion has no non-zero term")

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "regime": self.regime,
            "terms": [term.to_dict() for term in self.terms],
            "collisions": [list(c) for c in self.collisions],
            "excluded_indices": self.excluded_indices,
            "tolerance_based": self.tolerance_based,
            "search_bound": self.search_bound,
            "search_complete": self.search_complete,
        }
        if self.first_collision is not None:
            data["first_collision"] = list(self.first_collision)
        return data


def first_series_coefficient(p: EquationParams, ell: int) -> float:
    """h*_{1,l}: residue at s = -(d + 2l)/alpha."""
    ratio = (p.d + 2 * ell) / p.alpha
    csc = 1.0 / math.sin(math.pi * ratio)
    return (
        2.0
        * (-1) ** ell
        * math.pi
        * csc
        * reciprocal_gamma(ell + p.d / 2.0)
        * reciprocal_gamma(p.beta + p.gamma - ratio * p.beta)
        / (p.alpha * math.factorial(ell))
    )


def second_series_coefficient(p: EquationParams, ell: int) -> float:
    """h*_{2,l}: residue at s = -(l + 1)."""
    weight = reciprocal_gamma(p.gamma - ell * p.beta)
    if weight == 0.0:
        return 0.0
    numerator = special.gamma((p.d - (ell + 1) * p.alpha) / 2.0)
    return (-1) ** ell * float(numerator) * reciprocal_gamma((ell + 1) * p.alpha / 2.0) * weight


def collision_coefficients(p: EquationParams, l1: int, l2: int) -> Tuple[float, float]:
    """
    Double-pole residue at s0 = -(l2 + 1) = -(2 l1 + d)/alpha.

    Returns:
        (coefficient of z^{l2+1} log z, coefficient of z^{l2+1})
    """
    alpha = p.alpha
    sign = (-1) ** (l1 + l2) / (math.factorial(l1) * math.factorial(l2))
    gamma_neg = float(math.factorial(l2))
    psi_neg = float(special.digamma(l2 + 1))

    x_a = l1 + p.d / 2.0
    a_val, a_der = reciprocal_gamma(x_a), reciprocal_gamma_derivative(x_a)
    x_b = p.gamma - p.beta * l2
    b_val, b_der = reciprocal_gamma(x_b), reciprocal_gamma_derivative(x_b)

    r_val = gamma_neg * a_val * b_val
    r_der = gamma_neg * (-psi_neg * a_val * b_val - 0.5 * alpha * a_der * b_val + p.beta * a_val * b_der)

    log_coef = -sign * (2.0 / alpha) * r_val
    coef = sign * (
        (2.0 / alpha) * r_der + (2.0 * float(special.digamma(l2 + 1)) / alpha + float(special.digamma(l1 + 1))) * r_val
    )
    return log_coef, coef


def _find_collisions(p: EquationParams, bound: int) -> Tuple[Set[Tuple[int, int]], bool]:
    """Pairs (l1, l2) with 2 l1 + d = alpha (l2 + 1) reachable from indices up to bound."""
    exact = p.alpha_fraction
    found: Set[Tuple[int, int]] = set()
    for ell in range(bound + 1):
        # l1 = ell: l2 + 1 = (2 ell + d)/alpha
        m = 2 * ell + p.d
        if exact is not None:
            q = m / exact
            if q.denominator == 1 and q.numerator >= 1:
                found.add((ell, q.numerator - 1))
        else:
            v = m / p.alpha
            k = round(v)
            if k >= 1 and abs(v - k) <= ARITHMETIC_REL_TOL * v:
                found.add((ell, k - 1))
        # l2 = ell: 2 l1 + d = alpha (ell + 1)
        if exact is not None:
            w = exact * (ell + 1) - p.d
            if w.denominator == 1 and w.numerator >= 0 and w.numerator % 2 == 0:
                found.add((w.numerator // 2, ell))
        else:
            w = p.alpha * (ell + 1) - p.d
            k = round(w)
            if k >= 0 and k % 2 == 0 and abs(w - k) <= ARITHMETIC_REL_TOL * p.alpha * (ell + 1):
                found.add((k // 2, ell))
    return found, exact is None


def _first_exact_collision(p: EquationParams) -> Optional[Tuple[int, int]]:
    """Smallest collision for rational alpha = num/den in lowest terms, or None if none exists."""
    exact = p.alpha_fraction
    if exact is None:
        return None
    num, den = exact.numerator, exact.denominator
    # 2 l1 + d = num r, l2 + 1 = den r
    r = max(1, -(-p.d // num))
    for candidate in (r, r + 1):
        if (num * candidate - p.d) % 2 == 0:
            return ((num * candidate - p.d) // 2, den * candidate - 1)
    return None


def origin_expansion(p: EquationParams, n_terms: int) -> OriginExpansion:
    """
    First n_terms terms of the small-z expansion of f, sorted by (exponent, log power).

    Args:
        p: Equation parameters, beta in (0, 2)
        n_terms: Number of terms to emit

    Returns:
        OriginExpansion; zero coefficients are kept as explicit terms

    Raises:
        UnsupportedParameterError: If beta >= 2
    """
    if p.beta >= 2.0:
        raise UnsupportedParameterError("origin expansion requires beta in (0, 2)")
    if n_terms < 1:
        raise DomainError(f"n_terms must be positive, got {n_terms}")

    bound = n_terms
    collisions, tolerance_based = _find_collisions(p, bound)
    first_set = {c[0] for c in collisions}
    second_set = {c[1] for c in collisions}

    candidates: List[SeriesTerm] = []
    for ell in range(bound + 1):
        if ell not in first_set:
            candidates.append(SeriesTerm((p.d + 2 * ell) / p.alpha, 0, first_series_coefficient(p, ell), "h1"))
        if ell not in second_set:
            candidates.append(SeriesTerm(float(ell + 1), 0, second_series_coefficient(p, ell), "h2"))
    for l1, l2 in sorted(collisions, key=lambda c: c[1]):
        log_coef, coef = collision_coefficients(p, l1, l2)
        candidates.append(SeriesTerm(float(l2 + 1), 1, log_coef, "collision_log"))
        candidates.append(SeriesTerm(float(l2 + 1), 0, coef, "collision"))

    candidates.sort(key=SeriesTerm.sort_key)
    terms = candidates[:n_terms]

    ordered = sorted(collisions, key=lambda c: c[1])
    first = ordered[0] if ordered else _first_exact_collision(p)
    regime = ARITHMETIC if ordered else GENERIC
    search_complete = bool(ordered) or (p.alpha_fraction is not None and first is None)
    excluded = {
        "L1": sorted(c[0] for c in ordered if c[0] <= bound),
        "L2": sorted(c[1] for c in ordered if c[1] <= bound),
    }

    if ordered and tolerance_based:
        logger.warning(
            f"alpha={p.alpha} classified arithmetic within relative tolerance {ARITHMETIC_REL_TOL}; "
            f"pass alpha as a ratio for an exact decision"
        )
    if not ordered and first is not None:
        logger.warning(f"first pole collision {first} lies beyond the search bound {bound}")
    logger.debug(f"origin expansion: regime={regime}, {len(terms)} terms, collisions={ordered}")

    return OriginExpansion(
        params=p,
        terms=terms,
        regime=regime,
        collisions=ordered,
        excluded_indices=excluded,
        first_collision=first,
        tolerance_based=tolerance_based and bool(ordered),
        search_bound=bound,
        search_complete=search_complete,
    )
