"""Dalang's condition: existence of a random field solution."""

import logging
import math
from enum import Enum
from typing import Any, Dict

from fracspde.kernel.params import EquationParams
from fracspde.settings import ARITHMETIC_REL_TOL
from fracspde.solvability.exponents import exponents
from fracspde.solvability.params import NoiseParams

logger = logging.getLogger(__name__)


class VerdictStatus(str, Enum):
    SOLVABLE = "Solvable"
    NOT_SOLVABLE = "NotSolvable"
    SOLVABLE_SUFFICIENT_ONLY = "SolvableSufficientOnly"
    UNKNOWN = "Unknown"


class DalangCase(str, Enum):
    """Which branch of the condition applies."""

    GENERAL = "i"  # beta < 2, or beta = 2 with gamma > 1
    WAVE = "ii"  # beta = 2, gamma = 0
    WAVE_MEMORY = "iii"  # beta = 2, gamma in (0, 1]


class Verdict:
    """Outcome of the Dalang check."""

    def __init__(self, status: VerdictStatus, case_tag: DalangCase, threshold: float, boundary: bool):
        self.status = status
        self.case_tag = case_tag
        self.threshold = threshold
        self.boundary = boundary

    @property
    def solvable(self) -> bool:
        """Whether a random field solution is guaranteed."""
        return self.status in (VerdictStatus.SOLVABLE, VerdictStatus.SOLVABLE_SUFFICIENT_ONLY)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "case_tag": self.case_tag.value,
            "threshold": self.threshold,
            "boundary": self.boundary,
        }


def dalang_case(p: EquationParams) -> DalangCase:
    if p.beta < 2.0 or p.gamma > 1.0:
        return DalangCase.GENERAL
    if p.gamma == 0.0:
        return DalangCase.WAVE
    return DalangCase.WAVE_MEMORY


def solvability_threshold(p: EquationParams, n: NoiseParams) -> float:
    """
    Supremum of the admissible ell for the given (alpha, beta, gamma, H).

    Case (i):   2 alpha + (2 alpha / beta) min(0, gamma + H - 1)
    Case (ii):  (1/2 + H) alpha
    Case (iii): min(2, gamma + H + 1/2) alpha  (sufficient only)

    The noise range ell < 2d is not folded in.
    """
    case = dalang_case(p)
    if case is DalangCase.GENERAL:
        return 2.0 * p.alpha + 2.0 * p.alpha / p.beta * min(0.0, p.gamma + n.H - 1.0)
    if case is DalangCase.WAVE:
        return (0.5 + n.H) * p.alpha
    return min(2.0, p.gamma + n.H + 0.5) * p.alpha


def dalang_check(p: EquationParams, n: NoiseParams) -> Verdict:
    """
    Decide whether the equation has a random field solution.

    All comparisons are strict; a parameter set sitting on the threshold
    fails and is flagged with boundary=True.

    Args:
        p: Equation parameters
        n: Noise parameters

    Returns:
        Verdict; Unknown only for beta = 2, gamma in (0, 1] with the
        sufficient condition violated

    Raises:
        DomainError: If ell >= 2d
    """
    ex = exponents(p, n)
    case = dalang_case(p)
    threshold = solvability_threshold(p, n)
    ell = n.ell

    if case is DalangCase.GENERAL:
        ok = ex.rho0 > 0.0 and ell < 2.0 * p.alpha
        status = VerdictStatus.SOLVABLE if ok else VerdictStatus.NOT_SOLVABLE
        boundary = ex.rho0 == 0.0 or ell == 2.0 * p.alpha
    elif case is DalangCase.WAVE:
        status = VerdictStatus.SOLVABLE if ell < threshold else VerdictStatus.NOT_SOLVABLE
        boundary = ell == threshold
    else:
        status = VerdictStatus.SOLVABLE_SUFFICIENT_ONLY if ell < threshold else VerdictStatus.UNKNOWN
        boundary = ell == threshold

    boundary = boundary or math.isclose(ell, threshold, rel_tol=ARITHMETIC_REL_TOL)
    if boundary:
        logger.warning(f"ell={ell} sits on the solvability threshold {threshold:.17g}; strict inequality applied")
    logger.debug(f"Dalang case {case.value}: {status.value} (ell={ell}, threshold={threshold:.6g})")
    return Verdict(status, case, threshold, boundary)
