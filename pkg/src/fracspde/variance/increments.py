"""Variance of temporal and spatial increments of the solution."""

import logging
import math
from enum import Enum
from typing import List, Sequence, Tuple, Union

from fracspde.errors import DomainError
from fracspde.kernel.params import EquationParams
from fracspde.solvability.params import NoiseParams
from fracspde.variance.engine import covariance_engine
from fracspde.variance.params import DEFAULT_QUADRATURE, QuadratureSpec

logger = logging.getLogger(__name__)

Position = Union[float, Sequence[float]]
Point = Tuple[float, Position]


class Axis(str, Enum):
    """Direction of an increment."""

    TIME = "time"
    SPACE = "space"


def as_vector(x: Position, d: int) -> List[float]:
    """A position as a list of d coordinates; scalars are accepted for d = 1."""
    coords = [float(x)] if isinstance(x, (int, float)) else [float(c) for c in x]
    if len(coords) != d:
        raise DomainError(f"position {coords} does not have d={d} coordinates")
    return coords


def distance(x: Position, y: Position, d: int) -> float:
    """Euclidean distance between two positions in R^d."""
    return math.dist(as_vector(x, d), as_vector(y, d))


def increment_variance(
    p: EquationParams,
    n: NoiseParams,
    point_a: Point,
    point_b: Point,
    axis: Union[Axis, str] = Axis.TIME,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """
    Compute E[(u(t,x) - u(s,y))^2] for a pure time or pure space increment.

    Args:
        p: Equation parameters
        n: Noise parameters
        point_a: (t, x); t may be 0, where the solution vanishes
        point_b: (s, y)
        axis: time (requires x = y) or space (requires t = s)
        q: Quadrature settings

    Returns:
        The increment variance; 0 for identical points

    Raises:
        RegimeError: If the equation has no random field solution
        DomainError: If the points do not differ along the requested axis only
        UnsupportedParameterError: For spatial increments with d not in (1, 3)
    """
    axis = Axis(axis)
    (t, x), (s, y) = point_a, point_b
    if t < 0.0 or s < 0.0:
        raise DomainError(f"times must be non-negative, got t={t}, s={s}")
    delta = distance(x, y, p.d)
    engine = covariance_engine(p, n, q)

    if axis is Axis.TIME:
        if delta != 0.0:
            raise DomainError(f"time increments need x = y, got |x - y| = {delta}")
        value = engine.time_increment(t, s)
    else:
        if t != s:
            raise DomainError(f"space increments need t = s, got t={t}, s={s}")
        if t == 0.0:
            return 0.0
        value = engine.space_increment(t, delta)
    logger.debug(f"{axis.value} increment between {point_a} and {point_b}: {value:.12g}")
    return value
