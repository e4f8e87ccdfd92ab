"""
Spectral sampling of the solution through its harmonizable representation

    u(t, x) = Re int int A_t(tau, xi) e^{i xi x} |tau|^{(1-2H)/2} |xi|^{(ell-1)/2} M(dtau, dxi),

with the transfer function A_t(tau, xi) = int_0^t e^{-i tau (t - v)} Ghat(v, xi) dv
and M a complex Gaussian measure with control c_H dtau dxi, c_H = Gamma(2H+1) sin(pi H).
The box [-tau_max, tau_max] x [-xi_max, xi_max] is cut into cells graded
geometrically towards both axes; each cell carries one complex Gaussian
weighted by the square root of its spectral mass.
"""

import logging
import math
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from scipy import special

from fracspde.errors import DomainError, ResolutionError, UnsupportedParameterError
from fracspde.kernel.params import EquationParams
from fracspde.kernel.symbols import green_symbol
from fracspde.settings import (
    DEFAULT_MODE_COUNT,
    DEFAULT_SEED,
    DEFAULT_TAU_MAX,
    DEFAULT_XI_MAX,
    FREQUENCY_GRADING,
    MIN_MODE_COUNT,
    MIN_TIME_PANELS,
    ORIGIN_GRADING_LEVELS,
    TIME_PANEL_NODES,
)
from fracspde.simulator.covariance import philox_generator
from fracspde.simulator.points import SpacetimePoint
from fracspde.solvability.params import NoiseParams
from fracspde.variance.constants import require_solvable, spectral_time_constant

logger = logging.getLogger(__name__)


def graded_half_axis(limit: float, cells: int, power: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Representative points and masses int y^power dy of `cells` cells on [0, limit].

    The first cell is [0, FREQUENCY_GRADING * limit]; the others are
    geometrically spaced up to limit.
    """
    edges = np.concatenate(([0.0], np.geomspace(FREQUENCY_GRADING * limit, limit, cells)))
    mass = (edges[1:] ** (power + 1.0) - edges[:-1] ** (power + 1.0)) / (power + 1.0)
    nodes = np.sqrt(edges[1:] * np.maximum(edges[:-1], 0.0))
    nodes[0] = 0.5 * edges[1]
    return nodes, mass


def _gauss_panels(t: float, tau_max: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, t] resolving e^{-i tau v} up to tau_max and v^{b-1} at v = 0."""
    panels = max(MIN_TIME_PANELS, math.ceil(tau_max * t / math.pi))
    width = t / panels
    legendre_x, legendre_w = special.roots_legendre(TIME_PANEL_NODES)

    nodes: List[np.ndarray] = []
    weights: List[np.ndarray] = []
    edges = [width * 2.0 ** (-k) for k in range(ORIGIN_GRADING_LEVELS, -1, -1)]
    edges.extend(width * np.arange(2, panels + 1))
    # singular first piece: Gauss-Jacobi with weight v^{b-1}, carried by the nodes
    jacobi_x, jacobi_w = special.roots_jacobi(TIME_PANEL_NODES, 0.0, b - 1.0)
    first = edges[0]
    v = 0.5 * first * (jacobi_x + 1.0)
    nodes.append(v)
    weights.append(jacobi_w * (0.5 * first) ** b / v ** (b - 1.0))
    for lower, upper in zip(edges[:-1], edges[1:]):
        half = 0.5 * (upper - lower)
        nodes.append(lower + half * (legendre_x + 1.0))
        weights.append(half * legendre_w)
    return np.concatenate(nodes), np.concatenate(weights)


class SpectralModel:
    """Discretized harmonizable representation for one parameter set and frequency box."""

    def __init__(
        self,
        p: EquationParams,
        n: NoiseParams,
        mode_count: int = DEFAULT_MODE_COUNT,
        tau_max: float = DEFAULT_TAU_MAX,
        xi_max: float = DEFAULT_XI_MAX,
    ):
        if p.d != 1:
            raise UnsupportedParameterError(f"spectral sampling is implemented for d = 1, got d={p.d}")
        if mode_count < MIN_MODE_COUNT:
            raise ResolutionError(f"mode_count must be at least {MIN_MODE_COUNT}, got {mode_count}")
        if tau_max <= 0.0 or xi_max <= 0.0:
            raise DomainError(f"frequency box must be non-degenerate, got tau_max={tau_max}, xi_max={xi_max}")
        require_solvable(p, n)
        self.p = p
        self.n = n
        self.tau_max = tau_max
        self.xi_max = xi_max

        half = math.isqrt(mode_count) // 2
        self.mode_count = (2 * half) ** 2
        tau, tau_mass = graded_half_axis(tau_max, half, 1.0 - 2.0 * n.H)
        xi, xi_mass = graded_half_axis(xi_max, half, n.ell - 1.0)
        self.tau = np.concatenate((-tau[::-1], tau))
        self.xi = np.concatenate((-xi[::-1], xi))
        self._xi_abs = xi
        mass = spectral_time_constant(n.H) * np.outer(
            np.concatenate((tau_mass[::-1], tau_mass)), np.concatenate((xi_mass[::-1], xi_mass))
        )
        self.root_mass = np.sqrt(mass)
        self._transfer: Dict[float, np.ndarray] = {}
        logger.debug(f"spectral model: {self.mode_count} cells in [-{tau_max}, {tau_max}] x [-{xi_max}, {xi_max}]")

    def transfer(self, t: float) -> np.ndarray:
        """A_t(tau, xi) on the cell grid, shape (2 half, 2 half)."""
        cached = self._transfer.get(t)
        if cached is not None:
            return cached
        b = self.p.beta + self.p.gamma
        v, w = _gauss_panels(t, self.tau_max, b)
        symbol = np.array([[green_symbol(self.p, float(vk), float(r)) for vk in v] for r in self._xi_abs])
        phases = np.exp(-1j * np.outer(self.tau, t - v)) * w
        half_grid = phases @ symbol.T
        grid = np.concatenate((half_grid[:, ::-1], half_grid), axis=1)
        self._transfer[t] = grid
        return grid

    def loadings(self, points: Sequence[SpacetimePoint]) -> np.ndarray:
        """Complex loadings of each point on each cell, shape (points, cells)."""
        rows = []
        for point in points:
            if point.dimension != 1:
                raise DomainError(f"point {point.to_dict()} is not one-dimensional")
            wave = np.exp(1j * self.xi * point.x[0])
            rows.append((self.transfer(point.t) * wave[np.newaxis, :] * self.root_mass).ravel())
        return np.array(rows)

    def covariance(self, a: SpacetimePoint, b: SpacetimePoint) -> float:
        """Covariance of the discretized model, exact for the sampled law."""
        la, lb = self.loadings([a, b])
        return float(np.real(np.vdot(lb, la)))

    def normals(self, seed: int, replicates: int) -> np.ndarray:
        """Complex Gaussians per cell, each cell drawing from its own counter stream."""
        cells = self.mode_count
        z = np.empty((cells, replicates), dtype=complex)
        for cell in range(cells):
            draws = philox_generator(seed, cell).standard_normal((2, replicates))
            z[cell] = draws[0] + 1j * draws[1]
        return z


class FieldSample:
    """Replicates of the field on a point set drawn from the spectral model."""

    def __init__(
        self, seed: int, points: List[SpacetimePoint], values: np.ndarray, mode_count: int, box: Tuple[float, float]
    ):
        self.seed = seed
        self.points = points
        self.values = values
        self.mode_count = mode_count
        self.box = box

    @property
    def replicates(self) -> int:
        return self.values.shape[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "mode_count": self.mode_count,
            "tau_max": self.box[0],
            "xi_max": self.box[1],
            "points": [pt.to_dict() for pt in self.points],
            "values": self.values.tolist(),
        }


def sample_field(
    p: EquationParams,
    n: NoiseParams,
    points: Sequence[SpacetimePoint],
    mode_count: int = DEFAULT_MODE_COUNT,
    seed: int = DEFAULT_SEED,
    replicates: int = 1,
    tau_max: float = DEFAULT_TAU_MAX,
    xi_max: float = DEFAULT_XI_MAX,
) -> FieldSample:
    """
    Draw replicates of u on `points` from the truncated harmonizable representation.

    Args:
        p: Equation parameters (d = 1)
        n: Noise parameters
        points: Evaluation points
        mode_count: Requested number of spectral cells; rounded down to (2k)^2
        seed: Key of the counter-based generator
        replicates: Number of independent copies
        tau_max: Half-width of the temporal frequency box
        xi_max: Half-width of the spatial frequency box

    Returns:
        FieldSample with values of shape (replicates, points)

    Raises:
        ResolutionError: If mode_count < MIN_MODE_COUNT
        RegimeError: If the equation has no random field solution
    """
    if replicates < 1:
        raise DomainError(f"replicates must be positive, got {replicates}")
    points = list(points)
    model = SpectralModel(p, n, mode_count, tau_max, xi_max)
    loadings = model.loadings(points)
    values = np.real(loadings @ model.normals(seed, replicates)).T
    logger.info(f"sampled {replicates} replicates on {len(points)} points with {model.mode_count} modes (seed {seed})")
    return FieldSample(seed, points, values, model.mode_count, (tau_max, xi_max))


def spectral_covariance(
    p: EquationParams,
    n: NoiseParams,
    a: SpacetimePoint,
    b: SpacetimePoint,
    mode_count: int = DEFAULT_MODE_COUNT,
    tau_max: float = DEFAULT_TAU_MAX,
    xi_max: float = DEFAULT_XI_MAX,
) -> float:
    """Covariance of the truncated spectral model between a and b."""
    return SpectralModel(p, n, mode_count, tau_max, xi_max).covariance(a, b)
