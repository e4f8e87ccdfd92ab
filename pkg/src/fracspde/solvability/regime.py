"""Regime tags, modulus functions and the solvability report."""

import logging
import math
from enum import Enum
from typing import Any, Dict, List, Optional

from fracspde.errors import DomainError, RegimeError
from fracspde.kernel.params import EquationParams
from fracspde.settings import ARITHMETIC_REL_TOL, MODULI_SAMPLE_RADII
from fracspde.solvability.dalang import dalang_check
from fracspde.solvability.exponents import Exponents, exponents
from fracspde.solvability.params import NoiseParams

logger = logging.getLogger(__name__)

MODULI = ("m1", "m2", "w1", "w2")


class SlndTime(str, Enum):
    TWO_SIDED = "two_sided"
    ONE_SIDED = "one_sided"
    NONE = "none"


class RegimeTags:
    """Which variance bounds and nondeterminism properties are established."""

    def __init__(
        self,
        slnd_time: SlndTime,
        slnd_space: bool,
        variance_lower_time_valid: bool,
        temporal_upper_bound_valid: bool,
        extra_assumption_needed: bool,
        extra_assumption_holds: bool,
    ):
        self.slnd_time = slnd_time
        self.slnd_space = slnd_space
        self.variance_lower_time_valid = variance_lower_time_valid
        self.temporal_upper_bound_valid = temporal_upper_bound_valid
        self.extra_assumption_needed = extra_assumption_needed
        self.extra_assumption_holds = extra_assumption_holds

    def to_dict(self) -> Dict[str, Any]:
        return {
            "slnd_time": self.slnd_time.value,
            "slnd_space": self.slnd_space,
            "variance_lower_time_valid": self.variance_lower_time_valid,
            "temporal_upper_bound_valid": self.temporal_upper_bound_valid,
            "extra_assumption_needed": self.extra_assumption_needed,
            "extra_assumption_holds": self.extra_assumption_holds,
        }


def regime_report(p: EquationParams, n: NoiseParams) -> RegimeTags:
    """
    Tag the parameter set with the results that apply to it.

    slnd_time is two_sided for beta = 1 or (beta = 2, gamma in [0, 1]),
    one_sided for the remaining beta in (0, 2), and none otherwise.
    The extra assumption ell < alpha (gamma + 1/2) is needed for the
    temporal bounds when beta = 2 and gamma in (0, 2].
    """
    beta, gamma = p.beta, p.gamma
    if beta == 1.0 or (beta == 2.0 and gamma <= 1.0):
        slnd_time = SlndTime.TWO_SIDED
    elif beta < 2.0:
        slnd_time = SlndTime.ONE_SIDED
    else:
        slnd_time = SlndTime.NONE

    verdict = dalang_check(p, n)
    wave = beta == 2.0
    extra_needed = wave and 0.0 < gamma <= 2.0
    extra_holds = n.ell < p.alpha * (gamma + 0.5)

    return RegimeTags(
        slnd_time=slnd_time,
        slnd_space=verdict.solvable,
        variance_lower_time_valid=not wave or gamma <= 1.0,
        temporal_upper_bound_valid=not wave or gamma == 0.0 or gamma > 2.0 or extra_holds,
        extra_assumption_needed=extra_needed,
        extra_assumption_holds=extra_holds,
    )


def _critical(value: float) -> bool:
    return math.isclose(value, 1.0, rel_tol=ARITHMETIC_REL_TOL)


def _log_modulus(which: str, exponent: float, r: float) -> float:
    if which.startswith("m"):
        if _critical(exponent):
            return r * r * (1.0 + abs(math.log(r)))
        return r ** (2.0 * min(exponent, 1.0))
    if _critical(exponent):
        return r * math.log1p(1.0 / r)
    if exponent > 1.0:
        raise RegimeError(f"{which} is defined for exponents <= 1, got {exponent}")
    return r**exponent * math.sqrt(math.log1p(1.0 / r))


def modulus(
    p: EquationParams, n: NoiseParams, which: str, r: float, ex: Optional[Exponents] = None
) -> float:
    """
    Evaluate one of the modulus functions.

    m1, m2: variance scales r^{2 (rho ^ 1)} and r^{2 (rho_tilde ^ 1)}, with
    r^2 (1 + |log r|) when the exponent equals 1.
    w1, w2: uniform moduli r^rho sqrt(log(1 + 1/r)), with r log(1 + 1/r)
    when the exponent equals 1.

    Args:
        p: Equation parameters
        n: Noise parameters
        which: One of m1, m2, w1, w2
        r: Distance in (0, 1]
        ex: Precomputed exponents

    Raises:
        RegimeError: If the equation has no random field solution, or w1/w2
            is requested with an exponent above 1
        DomainError: If r is outside (0, 1] or which is unknown
    """
    if which not in MODULI:
        raise DomainError(f"unknown modulus '{which}', expected one of {MODULI}")
    if not 0.0 < r <= 1.0:
        raise DomainError(f"modulus is evaluated on r in (0, 1], got r={r}")
    verdict = dalang_check(p, n)
    if not verdict.solvable:
        raise RegimeError(f"no random field solution ({verdict.status.value}); moduli are undefined")
    ex = ex or exponents(p, n)
    exponent = ex.rho if which.endswith("1") else ex.rho_tilde
    return _log_modulus(which, exponent, r)


def moduli_samples(p: EquationParams, n: NoiseParams, radii: Optional[List[float]] = None) -> Dict[str, Any]:
    """Each modulus on the sample radii; w1/w2 report None when their exponent exceeds 1."""
    radii = radii or MODULI_SAMPLE_RADII
    ex = exponents(p, n)
    samples: Dict[str, Any] = {"r": list(radii)}
    for which in MODULI:
        try:
            samples[which] = [modulus(p, n, which, r, ex) for r in radii]
        except RegimeError as e:
            logger.debug(f"{which} skipped: {e}")
            samples[which] = None
    return samples


def solvability_report(p: EquationParams, n: NoiseParams) -> Dict[str, Any]:
    """The full classification of one parameter set as a JSON-ready dict."""
    ex = exponents(p, n)
    verdict = dalang_check(p, n)
    report: Dict[str, Any] = {
        "params": {**p.to_dict(), **n.to_dict()},
        "exponents": ex.to_dict(),
        "verdict": verdict.to_dict(),
        "tags": regime_report(p, n).to_dict(),
    }
    if verdict.solvable:
        report["moduli_samples"] = moduli_samples(p, n)
    logger.info(f"classified {report['params']}: {verdict.status.value}")
    return report
