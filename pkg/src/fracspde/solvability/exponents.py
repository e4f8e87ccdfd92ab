"""Regularity exponents of the solution."""

from typing import Dict

from fracspde.kernel.params import EquationParams
from fracspde.solvability.params import NoiseParams, check_hypothesis


class Exponents:
    """
    Temporal and spatial exponents for one parameter set.

    rho0 is the scaling exponent of the second moment, E[u(t,x)^2] = K t^{2 rho0}.
    rho1 and rho2 are the two temporal branches, rho is the one that applies,
    and the tilde variants are the matching spatial exponents.
    """

    def __init__(
        self,
        rho0: float,
        rho: float,
        rho_tilde: float,
        rho1: float,
        rho2: float,
        rho_tilde1: float,
        rho_tilde2: float,
    ):
        self.rho0 = rho0
        self.rho = rho
        self.rho_tilde = rho_tilde
        self.rho1 = rho1
        self.rho2 = rho2
        self.rho_tilde1 = rho_tilde1
        self.rho_tilde2 = rho_tilde2

    def to_dict(self) -> Dict[str, float]:
        return {
            "rho0": self.rho0,
            "rho": self.rho,
            "rho_tilde": self.rho_tilde,
            "rho1": self.rho1,
            "rho2": self.rho2,
            "rho_tilde1": self.rho_tilde1,
            "rho_tilde2": self.rho_tilde2,
        }


def uses_wave_branch(p: EquationParams) -> bool:
    """True when rho is given by rho2 (beta = 2, gamma in [0, 1])."""
    return p.beta == 2.0 and p.gamma <= 1.0


def exponents(p: EquationParams, n: NoiseParams) -> Exponents:
    """
    Compute all seven exponents.

    Args:
        p: Equation parameters
        n: Noise parameters

    Returns:
        Exponents

    Raises:
        DomainError: If ell >= 2d
    """
    check_hypothesis(p, n)
    alpha, beta, gamma = p.alpha, p.beta, p.gamma
    H, ell = n.H, n.ell

    rho0 = beta + gamma - 1.0 + H - ell * beta / (2.0 * alpha)
    rho1 = beta + gamma + H - ell * beta / (2.0 * alpha) - 1.0
    rho2 = gamma + H - ell / alpha + 0.5
    spatial_cap = alpha - ell / 2.0

    rho = rho2 if uses_wave_branch(p) else rho1
    return Exponents(
        rho0=rho0,
        rho=rho,
        rho_tilde=min(alpha * rho / beta, spatial_cap),
        rho1=rho1,
        rho2=rho2,
        rho_tilde1=min(alpha * rho1 / beta, spatial_cap),
        rho_tilde2=min(alpha * rho2 / 2.0, spatial_cap),
    )
