"""Equation parameters, kernel kinds and the Fox H-function parameter set."""

import math
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, model_validator

from fracspde.errors import DomainError
from fracspde.settings import ARITHMETIC_REL_TOL


class EquationParams(BaseModel):
    """
    Deterministic parameters of (d_t^beta + (nu/2)(-Laplacian)^{alpha/2}) u = I_t^gamma[noise].

    alpha_ratio optionally carries alpha as an exact ratio of integers so
    that arithmetic relations between alpha and the dimension can be
    decided exactly.
    """

    model_config = ConfigDict(frozen=True)

    alpha: PositiveFloat
    beta: float = Field(gt=0.0, le=2.0)
    gamma: float = Field(default=0.0, ge=0.0)
    nu: PositiveFloat = 1.0
    d: PositiveInt = 1
    alpha_ratio: Optional[Tuple[int, int]] = None

    @model_validator(mode="after")
    def _check_ratio(self) -> "EquationParams":
        if self.alpha_ratio is not None:
            num, den = self.alpha_ratio
            if num <= 0 or den <= 0:
                raise ValueError("alpha_ratio must be a pair of positive integers")
            if not math.isclose(num / den, self.alpha, rel_tol=ARITHMETIC_REL_TOL):
                raise ValueError(f"alpha_ratio {num}/{den} does not match alpha={self.alpha}")
        return self

    @classmethod
    def parse_alpha(cls, text: str) -> Tuple[float, Optional[Tuple[int, int]]]:
        """Parse '1.5' or '3/2' into (alpha, exact ratio or None)."""
        if "/" in text:
            num_text, den_text = text.split("/", 1)
            try:
                ratio = Fraction(int(num_text), int(den_text))
            except (ValueError, ZeroDivisionError) as e:
                raise DomainError(f"cannot parse alpha ratio '{text}'") from e
            return float(ratio), (ratio.numerator, ratio.denominator)
        try:
            return float(text), None
        except ValueError as e:
            raise DomainError(f"cannot parse alpha '{text}'") from e

    @property
    def alpha_fraction(self) -> Optional[Fraction]:
        """alpha as an exact Fraction when given as a ratio."""
        if self.alpha_ratio is None:
            return None
        return Fraction(*self.alpha_ratio)

    @property
    def ceil_beta(self) -> int:
        return math.ceil(self.beta)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "nu": self.nu,
            "d": self.d,
        }
        if self.alpha_ratio is not None:
            data["alpha_ratio"] = f"{self.alpha_ratio[0]}/{self.alpha_ratio[1]}"
        return data


class KernelKind(str, Enum):
    """Fundamental solutions of the equation."""

    Z = "Z"
    ZSTAR = "Zstar"
    Y = "Y"


class FoxHParams:
    """Characteristic parameters shared by the H-functions of Z, Z* and Y."""

    def __init__(self, a_star: float, a1_star: float, delta_cap: float, mu: float, delta: float):
        self.a_star = a_star
        self.a1_star = a1_star
        self.delta_cap = delta_cap
        self.mu = mu
        self.delta = delta

    def to_dict(self) -> Dict[str, float]:
        return {
            "a_star": self.a_star,
            "a1_star": self.a1_star,
            "delta_cap": self.delta_cap,
            "mu": self.mu,
            "delta": self.delta,
        }


def fox_h_parameters(p: EquationParams) -> FoxHParams:
    """
    Compute (a*, a1*, Delta, mu, delta) of the H-function representation.

    Args:
        p: Equation parameters

    Returns:
        FoxHParams with mu taken for Y (mu = (d+1)/2 - (beta+gamma))
    """
    return FoxHParams(
        a_star=2.0 - p.beta,
        a1_star=p.alpha / 2.0 + 1.0 - p.beta,
        delta_cap=p.alpha - p.beta,
        mu=(p.d + 1) / 2.0 - (p.beta + p.gamma),
        delta=(p.alpha / 2.0) ** p.alpha * p.beta ** (-p.beta),
    )
