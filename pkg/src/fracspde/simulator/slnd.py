"""Empirical checks of strong local nondeterminism through conditional variances."""

import logging
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from fracspde.errors import DomainError, UnsupportedParameterError
from fracspde.kernel.params import EquationParams
from fracspde.runner.batch_runner import run_batches
from fracspde.settings import DEFAULT_SEED, DEFAULT_THREADS, JITTER_START
from fracspde.simulator.covariance import (
    CovarianceModel,
    conditional_variance_at,
    nearest_distance,
    philox_generator,
)
from fracspde.simulator.points import SpacetimePoint
from fracspde.solvability.exponents import exponents
from fracspde.solvability.params import NoiseParams
from fracspde.variance.params import DEFAULT_QUADRATURE, QuadratureSpec

logger = logging.getLogger(__name__)


class SlndKind(str, Enum):
    """Configuration family of the conditioning points."""

    ONE_SIDED = "one_sided"  # conditioning times all before the target time
    TWO_SIDED = "two_sided"  # conditioning times anywhere in the window
    SPACE = "space"  # fixed time, conditioning positions anywhere in the window


class SlndRatios:
    """
    Conditional variance divided by the nearest distance to the power 2 rho (or 2 rho_tilde).

    floors holds, per configuration, the level below which a conditional
    variance cannot be told apart from the diagonal jitter of its Gram matrix.
    """

    def __init__(
        self,
        kind: SlndKind,
        exponent: float,
        ratios: List[float],
        distances: List[float],
        variances: List[float],
        floors: List[float],
    ):
        self.kind = kind
        self.exponent = exponent
        self.ratios = ratios
        self.distances = distances
        self.variances = variances
        self.floors = floors

    @property
    def min_ratio(self) -> float:
        """The fitted constant c of Var(target | given) >= c * distance^exponent."""
        return min(self.ratios)

    @property
    def violations(self) -> List[int]:
        """Configurations whose conditional variance does not clear the jitter floor."""
        return [k for k, (value, floor) in enumerate(zip(self.variances, self.floors)) if value <= floor]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "exponent": self.exponent,
            "min_ratio": self.min_ratio,
            "ratios": self.ratios,
            "distances": self.distances,
            "conditional_variances": self.variances,
            "floors": self.floors,
            "violations": self.violations,
        }


def _configuration(
    kind: SlndKind, window: Tuple[float, float], n_given: int, rng: np.random.Generator
) -> Tuple[float, List[float]]:
    low, high = window
    if kind is SlndKind.ONE_SIDED:
        target = rng.uniform(low + 0.5 * (high - low), high)
        return target, sorted(rng.uniform(low, target, n_given).tolist())
    target = rng.uniform(low, high)
    return target, sorted(rng.uniform(low, high, n_given).tolist())


def slnd_ratios(
    p: EquationParams,
    n: NoiseParams,
    kind: Union[SlndKind, str] = SlndKind.TWO_SIDED,
    window: Tuple[float, float] = (0.5, 1.0),
    n_configs: int = 50,
    n_given: int = 4,
    anchor: float = 1.0,
    seed: int = DEFAULT_SEED,
    threads: int = DEFAULT_THREADS,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> SlndRatios:
    """
    Conditional variances over random configurations, scaled by the nearest distance.

    Args:
        p: Equation parameters (d = 1)
        n: Noise parameters
        kind: one_sided or two_sided in time, or space
        window: Time window (time kinds, positive) or position window (space)
        n_configs: Number of random configurations; configuration k draws from stream k
        n_given: Conditioning points per configuration
        anchor: Position (time kinds) or time (space kind) held fixed
        seed: Generator key
        threads: Configurations evaluated concurrently
        q: Quadrature settings

    Returns:
        SlndRatios; a positive minimum ratio is the empirical signature of
        strong local nondeterminism with the reported exponent
    """
    kind = SlndKind(kind)
    if p.beta == 2.0 and p.gamma > 1.0:
        raise UnsupportedParameterError("nondeterminism checks are not provided for beta = 2 with gamma > 1")
    if n_configs < 1 or n_given < 1:
        raise DomainError(f"need n_configs >= 1 and n_given >= 1, got {n_configs}, {n_given}")
    if kind is not SlndKind.SPACE and window[0] <= 0.0:
        raise DomainError(f"time window must start after 0, got {window}")
    if kind is SlndKind.SPACE and anchor <= 0.0:
        raise DomainError(f"the fixed time must be positive, got {anchor}")

    ex = exponents(p, n)
    exponent = 2.0 * (ex.rho_tilde if kind is SlndKind.SPACE else ex.rho)
    model = CovarianceModel(p, n, q)

    def configuration(k: int) -> Optional[Tuple[float, float, float]]:
        target, given = _configuration(kind, window, n_given, philox_generator(seed, k))
        if kind is SlndKind.SPACE:
            point = SpacetimePoint(t=anchor, x=target)
            others = [SpacetimePoint(t=anchor, x=x) for x in given]
        else:
            point = SpacetimePoint(t=target, x=anchor)
            others = [SpacetimePoint(t=s, x=anchor) for s in given]
        gap = nearest_distance(given, target)
        if gap == 0.0:
            return None
        matrix = model.gram_matrix([point, *others])
        floor = 10.0 * max(matrix.jitter, JITTER_START * float(np.max(np.diag(matrix.entries))))
        return gap, conditional_variance_at(model, point, others, matrix), floor

    tasks = [(lambda k=k: configuration(k)) for k in range(n_configs)]
    outcomes = [o for o in run_batches(tasks, threads, label="nondeterminism") if o is not None]
    if not outcomes:
        raise DomainError("every configuration had a conditioning point on the target")
    distances = [gap for gap, _, _ in outcomes]
    variances = [value for _, value, _ in outcomes]
    floors = [floor for _, _, floor in outcomes]
    ratios = [value / gap**exponent for gap, value, _ in outcomes]
    result = SlndRatios(kind, exponent, ratios, distances, variances, floors)
    logger.info(f"{kind.value} nondeterminism: {len(ratios)} configurations, min ratio {min(ratios):.4g}")
    if result.violations:
        logger.warning(f"{len(result.violations)} conditional variances are at the jitter floor")
    return result
