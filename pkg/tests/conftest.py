"""Shared fixtures for the fracspde tests."""

import pytest

from fracspde.kernel.params import EquationParams
from fracspde.solvability.params import NoiseParams


@pytest.fixture
def heat_params():
    """Classical heat equation d_t u = Laplacian u (nu = 2), d = 1."""
    return EquationParams(alpha=2.0, beta=1.0, gamma=0.0, nu=2.0, d=1)


@pytest.fixture
def wave_params():
    """Wave equation d_tt u = Laplacian u (nu = 2), d = 1."""
    return EquationParams(alpha=2.0, beta=2.0, gamma=0.0, nu=2.0, d=1)


@pytest.fixture
def white_noise():
    """Space-time white noise in d = 1."""
    return NoiseParams(H=0.5, ell=1.0)
