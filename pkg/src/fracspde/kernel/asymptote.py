"""Leading behaviour of the fundamental solution as |x| -> infinity."""

import logging
import math
from enum import Enum
from typing import Any, Dict

from fracspde.errors import DomainError, UnsupportedParameterError
from fracspde.kernel.green import profile_constants
from fracspde.kernel.params import EquationParams
from fracspde.settings import ARITHMETIC_REL_TOL
from fracspde.specfun.gamma import gamma as gamma_function, reciprocal_gamma

logger = logging.getLogger(__name__)


class AsymptoteForm(str, Enum):
    POWER_LAW = "power_law"
    STRETCHED_EXP = "stretched_exp"
    OSCILLATORY_EXP = "oscillatory_exp"


class InfinityAsymptote:
    """
    Leading term of G(1, x) for large |x|.

    power_law:        Theta1 |x|^{-(d+alpha)}
    stretched_exp:    Theta21 |x|^{p} exp(-Theta22 |x|^{s})
    oscillatory_exp:  Theta31 |x|^{p} cos(Theta32 - Theta33 cos(theta) |x|^{s}) exp(-Theta33 sin(theta) |x|^{s})
    """

    def __init__(self, params: EquationParams, form: AsymptoteForm, constants: Dict[str, float]):
        self.params = params
        self.form = form
        self.constants = constants

    def leading_term(self, r: float) -> float:
        """Leading term of G(1, x) at |x| = r > 0."""
        if r <= 0.0:
            raise DomainError(f"asymptote is evaluated at r > 0, got r={r}")
        c = self.constants
        if self.form is AsymptoteForm.POWER_LAW:
            return c["Theta1"] * r ** (-c["decay_exponent"])
        stretched = r ** c["stretch_exponent"]
        if self.form is AsymptoteForm.STRETCHED_EXP:
            return c["Theta21"] * r ** c["power_exponent"] * math.exp(-c["Theta22"] * stretched)
        theta = c["theta"]
        return (
            c["Theta31"]
            * r ** c["power_exponent"]
            * math.cos(c["Theta32"] - c["Theta33"] * math.cos(theta) * stretched)
            * math.exp(-c["Theta33"] * math.sin(theta) * stretched)
        )

    def evaluate(self, t: float, r: float) -> float:
        """Leading term of G(t, x) through the scaling law."""
        p = self.params
        if t <= 0.0:
            raise DomainError(f"time must be positive, got t={t}")
        exponent = p.beta + p.gamma - 1.0 - p.d * p.beta / p.alpha
        return t**exponent * self.leading_term(t ** (-p.beta / p.alpha) * r)

    def to_dict(self) -> Dict[str, Any]:
        return {"form": self.form.value, "constants": dict(self.constants)}


def _even_integer(value: float) -> int:
    """Return value as an even integer when it is one, else 0."""
    nearest = round(value)
    if nearest >= 2 and nearest % 2 == 0 and math.isclose(value, nearest, rel_tol=ARITHMETIC_REL_TOL):
        return int(nearest)
    return 0


def infinity_asymptote(p: EquationParams) -> InfinityAsymptote:
    """
    Select and compute the leading tail of G(1, x).

    Args:
        p: Equation parameters with beta in (0, 2)

    Returns:
        power_law when alpha is not an even integer, stretched_exp when
        alpha = 2, oscillatory_exp when alpha is an even integer >= 4

    Raises:
        UnsupportedParameterError: If beta = 2
    """
    if not 0.0 < p.beta < 2.0:
        raise UnsupportedParameterError("infinity asymptote requires beta in (0, 2)")

    alpha, beta, gamma, d = p.alpha, p.beta, p.gamma, p.d
    c1, c2 = profile_constants(p)
    even = _even_integer(alpha)

    if even == 0:
        h11 = (
            gamma_function((d + alpha) / 2.0)
            * gamma_function(1.0 + alpha / 2.0)
            * math.sin(math.pi * alpha / 2.0)
            * reciprocal_gamma(2.0 * beta + gamma)
            / math.pi
        )
        constants = {
            "Theta1": c1 * h11 / c2,
            "h11": h11,
            "decay_exponent": d + alpha,
        }
        logger.debug(f"power-law tail: Theta1={constants['Theta1']:.6g}")
        return InfinityAsymptote(p, AsymptoteForm.POWER_LAW, constants)

    q = (d / 2.0 + 1.0 - beta - gamma) / (alpha - beta)
    if even == 2:
        amplitude = beta ** ((-4.0 * gamma + beta * (d - 3) + 2.0) / (4.0 - 2.0 * beta)) / math.sqrt(2.0 - beta)
        rate = (2.0 - beta) * beta ** (beta / (2.0 - beta))
        constants = {
            "Theta21": c1 * amplitude * c2**q,
            "Theta22": rate * c2 ** (1.0 / (2.0 - beta)),
            "power_exponent": alpha * q - d,
            "stretch_exponent": alpha / (2.0 - beta),
        }
        return InfinityAsymptote(p, AsymptoteForm.STRETCHED_EXP, constants)

    gap = alpha - beta
    theta = (2.0 - beta) / gap * math.pi / 2.0
    amplitude = (
        (2.0 * math.pi) ** ((alpha / 2.0 - 1.0) / 2.0)
        * gap**-0.5
        * (alpha / 2.0) ** ((beta * (1 - d) + alpha * (2.0 * beta + 2.0 * gamma - 3.0)) / (2.0 * gap))
        * beta ** ((beta * (1 + d) - alpha * (2.0 * beta + 2.0 * gamma - 1.0)) / (2.0 * gap))
    )
    phase = math.pi * (alpha / 2.0 - 1.0) * (d / 2.0 + 1.0 - beta - gamma) / gap
    rate = (alpha / 2.0) ** (alpha / (beta - alpha)) * gap * beta ** (beta / gap)
    constants = {
        "Theta31": c1 * amplitude * c2**q,
        "Theta32": phase,
        "Theta33": rate * c2 ** (1.0 / gap),
        "theta": theta,
        "power_exponent": alpha * q - d,
        "stretch_exponent": alpha / gap,
    }
    return InfinityAsymptote(p, AsymptoteForm.OSCILLATORY_EXP, constants)
