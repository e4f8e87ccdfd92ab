"""Monte Carlo estimates of small-ball probabilities of the solution."""

import logging
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from fracspde.errors import DomainError, RegimeError
from fracspde.kernel.params import EquationParams
from fracspde.runner.batch_runner import run_batches
from fracspde.settings import DEFAULT_MC_BATCH, DEFAULT_SEED, DEFAULT_THREADS
from fracspde.simulator.covariance import CovMatrix, CovarianceModel, sample_exact
from fracspde.simulator.points import space_grid, time_grid
from fracspde.simulator.statistics import fit_exponent
from fracspde.solvability.exponents import exponents
from fracspde.solvability.params import NoiseParams
from fracspde.variance.params import DEFAULT_QUADRATURE, QuadratureSpec

logger = logging.getLogger(__name__)


class BallAxis(str, Enum):
    """Which sup-norm is estimated."""

    TIME = "time"  # sup over t in an interval at a fixed position
    SPACE = "space"  # sup over x in an interval at a fixed time


class SmallBallCurve:
    """Estimated P{sup |u| <= eps} over a list of radii."""

    def __init__(
        self,
        eps: List[float],
        prob: List[float],
        n_samples: int,
        axis: BallAxis,
        expected_exponent: float,
        seed: int,
        jitter: float,
    ):
        self.eps = eps
        self.prob = prob
        self.n_samples = n_samples
        self.axis = axis
        self.expected_exponent = expected_exponent
        self.seed = seed
        self.jitter = jitter

    def exponent_fit(self, min_prob: float = 0.0, max_prob: float = 1.0) -> Optional[Tuple[float, float, float]]:
        """
        Regress log(-log P) on log(1/eps) over radii with min_prob < P < max_prob.

        Radii whose probability is close to 1 sit before the asymptotic regime,
        and those near 1 / n_samples carry most of the Monte Carlo noise; the
        band trims both ends.

        Returns:
            (slope, intercept, r^2), or None with fewer than four usable radii
        """
        if not 0.0 <= min_prob < max_prob <= 1.0:
            raise DomainError(f"need 0 <= min_prob < max_prob <= 1, got {min_prob}, {max_prob}")
        pairs = [(1.0 / e, -np.log(pr)) for e, pr in zip(self.eps, self.prob) if min_prob < pr < max_prob]
        if len(pairs) < 4:
            return None
        inverse, minus_log = zip(*pairs)
        return fit_exponent(inverse, minus_log)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "axis": self.axis.value,
            "eps": self.eps,
            "prob": self.prob,
            "n_samples": self.n_samples,
            "expected_exponent": self.expected_exponent,
            "seed": self.seed,
            "jitter": self.jitter,
        }


def _expected_exponent(p: EquationParams, n: NoiseParams, axis: BallAxis) -> float:
    ex = exponents(p, n)
    if axis is BallAxis.TIME:
        if not 0.0 < ex.rho < 1.0:
            raise RegimeError(f"temporal small-ball estimates need rho in (0, 1), got rho={ex.rho}")
        return 1.0 / ex.rho
    if not 0.0 < ex.rho_tilde < 1.0:
        raise RegimeError(f"spatial small-ball estimates need rho_tilde in (0, 1), got rho_tilde={ex.rho_tilde}")
    return p.d / ex.rho_tilde


def _count_below(matrix: CovMatrix, eps: np.ndarray, size: int, seed: int, batch: int) -> np.ndarray:
    paths = sample_exact(matrix, size, seed, stream=batch)
    sup = np.max(np.abs(paths), axis=1)
    return np.sum(sup[:, np.newaxis] <= eps[np.newaxis, :], axis=0)


def small_ball_mc(
    p: EquationParams,
    n: NoiseParams,
    interval: Tuple[float, float],
    x0: float,
    eps_list: Sequence[float],
    n_samples: int,
    grid_size: int,
    seed: int = DEFAULT_SEED,
    axis: Union[BallAxis, str] = BallAxis.TIME,
    batch_size: int = DEFAULT_MC_BATCH,
    threads: int = DEFAULT_THREADS,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> SmallBallCurve:
    """
    Estimate P{sup |u| <= eps} on a grid from the exact finite-dimensional law.

    Args:
        p: Equation parameters (d = 1)
        n: Noise parameters
        interval: Time interval [S, T] (time axis, S > 0) or space interval (space axis)
        x0: Fixed position (time axis) or fixed time (space axis)
        eps_list: Radii
        n_samples: Monte Carlo sample size
        grid_size: Number of grid points in the interval
        seed: Generator key; batch b uses stream b
        axis: time or space
        batch_size: Samples per batch
        threads: Concurrent batches
        q: Quadrature settings for the Gram matrix

    Returns:
        SmallBallCurve with radii sorted increasingly

    Raises:
        RegimeError: If the relevant exponent is not in (0, 1)
    """
    axis = BallAxis(axis)
    if n_samples < 1 or grid_size < 2 or batch_size < 1:
        raise DomainError(
            f"need n_samples, batch_size >= 1 and grid_size >= 2, got {n_samples}, {batch_size}, {grid_size}"
        )
    if any(e <= 0.0 for e in eps_list):
        raise DomainError("radii must be positive")
    expected = _expected_exponent(p, n, axis)

    start, stop = interval
    if axis is BallAxis.TIME:
        points = time_grid(start, stop, grid_size, x0)
    else:
        if x0 <= 0.0:
            raise DomainError(f"the fixed time must be positive, got {x0}")
        points = space_grid(x0, start, stop, grid_size)
    matrix = CovarianceModel(p, n, q).gram_matrix(points)

    eps = np.sort(np.asarray(eps_list, dtype=float))
    sizes = [min(batch_size, n_samples - k) for k in range(0, n_samples, batch_size)]
    tasks = [
        (lambda size=size, batch=batch: _count_below(matrix, eps, size, seed, batch))
        for batch, size in enumerate(sizes)
    ]
    counts = np.sum(run_batches(tasks, threads, label="small-ball"), axis=0)
    prob = np.maximum.accumulate(counts / n_samples)
    logger.info(f"small-ball curve ({axis.value}) from {n_samples} samples on {grid_size} points")
    return SmallBallCurve(eps.tolist(), prob.tolist(), n_samples, axis, expected, seed, matrix.jitter)
