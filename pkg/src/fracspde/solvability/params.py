"""Noise parameters."""

from typing import Dict

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat

from fracspde.errors import DomainError
from fracspde.kernel.params import EquationParams


class NoiseParams(BaseModel):
    """
    Gaussian noise that is fractional in time (Hurst index H) and Riesz in space.

    The spatial spectral density is |xi|^{ell-d}; ell = d is white in space.
    """

    model_config = ConfigDict(frozen=True)

    H: float = Field(ge=0.5, lt=1.0)
    ell: PositiveFloat

    @property
    def white_in_time(self) -> bool:
        return self.H == 0.5

    def check_dimension(self, d: int) -> None:
        """Raise DomainError unless ell < 2d."""
        if self.ell >= 2 * d:
            raise DomainError(f"noise requires 0 < ell < 2d, got ell={self.ell} with d={d}")

    def to_dict(self) -> Dict[str, float]:
        return {"H": self.H, "ell": self.ell}


def check_hypothesis(p: EquationParams, n: NoiseParams) -> None:
    """Check the joint parameter ranges that a single record cannot validate."""
    n.check_dimension(p.d)
