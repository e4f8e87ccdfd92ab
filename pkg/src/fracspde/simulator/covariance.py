"""
Exact covariances of the solution, Gram matrices and Gaussian conditioning.

Entries come from the variance engine, which reduces each covariance to a
one-dimensional quadrature against tabulated radial factors.
"""

import functools
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from fracspde.errors import ConditioningError, DomainError
from fracspde.kernel.params import EquationParams
from fracspde.settings import JITTER_MAX, JITTER_START, PAIR_CACHE_SIZE
from fracspde.simulator.points import SpacetimePoint
from fracspde.solvability.params import NoiseParams
from fracspde.variance.engine import CovarianceEngine, covariance_engine
from fracspde.variance.params import DEFAULT_QUADRATURE, QuadratureSpec

logger = logging.getLogger(__name__)


class CovMatrix:
    """Gram matrix of the solution on a point set, with the jitter its factorization needed."""

    def __init__(self, points: List[SpacetimePoint], entries: np.ndarray, jitter: float, factor: np.ndarray):
        self.points = points
        self.entries = entries
        self.jitter = jitter
        self.factor = factor

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def regularized(self) -> np.ndarray:
        """entries + jitter * I, the matrix that `factor` factorizes."""
        return self.entries + self.jitter * np.eye(self.size)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "points": [pt.to_dict() for pt in self.points],
            "entries": self.entries.tolist(),
            "jitter": self.jitter,
        }


def factorize(entries: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Lower Cholesky factor of a symmetric matrix, adding diagonal jitter if needed.

    Jitter starts at JITTER_START times the largest diagonal entry and
    doubles until the factorization succeeds.

    Returns:
        (factor, jitter) with factor @ factor.T = entries + jitter * I

    Raises:
        ConditioningError: If the jitter would exceed JITTER_MAX times the largest diagonal entry
    """
    scale = float(np.max(np.diag(entries))) if entries.size else 0.0
    if scale <= 0.0:
        raise ConditioningError(f"covariance matrix has no positive diagonal entry (max {scale})")
    jitter = 0.0
    identity = np.eye(entries.shape[0])
    while True:
        try:
            factor = linalg.cholesky(entries + jitter * identity, lower=True, check_finite=True)
            break
        except linalg.LinAlgError:
            jitter = JITTER_START * scale if jitter == 0.0 else 2.0 * jitter
            if jitter > JITTER_MAX * scale:
                raise ConditioningError(
                    f"Cholesky factorization failed with jitter up to {JITTER_MAX:g} x max diagonal {scale:.6g}"
                )
    if jitter > 0.0:
        logger.warning(f"covariance matrix regularized with jitter {jitter:.3g} ({jitter / scale:.3g} x max diagonal)")
    return factor, jitter


class CovarianceModel:
    """
    Covariance function of u(t, x) for one parameter set.

    The most recent PAIR_CACHE_SIZE pair values are cached by (larger time,
    smaller time, spatial distance), so Gram matrices on regular grids reuse
    repeated entries.
    """

    def __init__(self, p: EquationParams, n: NoiseParams, q: QuadratureSpec = DEFAULT_QUADRATURE):
        self.p = p
        self.n = n
        self.q = q
        self.engine: CovarianceEngine = covariance_engine(p, n, q)
        self._pair = functools.lru_cache(maxsize=PAIR_CACHE_SIZE)(self.engine.covariance)

    def _check_point(self, point: SpacetimePoint) -> None:
        if point.dimension != self.p.d:
            raise DomainError(f"point {point.to_dict()} is not in dimension d={self.p.d}")

    def covariance(self, a: SpacetimePoint, b: SpacetimePoint) -> float:
        """E[u(a) u(b)]."""
        self._check_point(a)
        self._check_point(b)
        return self._pair(max(a.t, b.t), min(a.t, b.t), a.distance(b))

    def gram(self, points: Sequence[SpacetimePoint]) -> np.ndarray:
        """Symmetric matrix of pairwise covariances."""
        points = list(points)
        if not points:
            raise DomainError("gram matrix needs at least one point")
        size = len(points)
        entries = np.empty((size, size))
        for i in range(size):
            for j in range(i, size):
                entries[i, j] = entries[j, i] = self.covariance(points[i], points[j])
        return entries

    def gram_matrix(self, points: Sequence[SpacetimePoint]) -> CovMatrix:
        """Gram matrix with its jittered Cholesky factor."""
        points = list(points)
        entries = self.gram(points)
        factor, jitter = factorize(entries)
        logger.debug(f"gram matrix on {len(points)} points, jitter {jitter:.3g}")
        return CovMatrix(points, entries, jitter, factor)


def covariance(
    p: EquationParams,
    n: NoiseParams,
    a: SpacetimePoint,
    b: SpacetimePoint,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """
    Compute E[u(a) u(b)].

    Raises:
        RegimeError: If the equation has no random field solution
        UnsupportedParameterError: For distinct positions with d not in (1, 3)
    """
    return CovarianceModel(p, n, q).covariance(a, b)


def gram_matrix(
    p: EquationParams,
    n: NoiseParams,
    points: Sequence[SpacetimePoint],
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> CovMatrix:
    """
    Build the Gram matrix of u on `points`.

    Raises:
        ConditioningError: If no admissible jitter makes the matrix factorizable
    """
    return CovarianceModel(p, n, q).gram_matrix(points)


def conditional_variance(m: CovMatrix, target: int, given: Iterable[int] = ()) -> float:
    """
    Var(u_target | u_given) as the Schur complement of the jittered matrix, clamped at 0.

    Raises:
        DomainError: If an index is out of range or target is in given
        ConditioningError: If the conditioning block cannot be factorized
    """
    given = sorted(set(given))
    size = m.size
    if not 0 <= target < size or any(not 0 <= g < size for g in given):
        raise DomainError(f"indices must lie in [0, {size}), got target={target}, given={given}")
    if target in given:
        raise DomainError(f"target {target} is also a conditioning index")

    matrix = m.regularized
    value = float(matrix[target, target])
    if given:
        block = matrix[np.ix_(given, given)]
        cross = matrix[given, target]
        try:
            chol = linalg.cho_factor(block, lower=True)
        except linalg.LinAlgError as e:
            raise ConditioningError(f"conditioning block on {len(given)} points is not positive definite") from e
        value -= float(cross @ linalg.cho_solve(chol, cross))
    return max(value, 0.0)


def philox_generator(seed: int, stream: int) -> np.random.Generator:
    """Counter-based generator keyed by seed; streams are 2^64 counters apart."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, stream, 0, 0]))


def sample_exact(m: CovMatrix, n_samples: int, seed: int, stream: int = 0) -> np.ndarray:
    """
    Draw samples of the finite-dimensional law from the Cholesky factor.

    Returns:
        Array of shape (n_samples, m.size)
    """
    if n_samples < 1:
        raise DomainError(f"n_samples must be positive, got {n_samples}")
    normals = philox_generator(seed, stream).standard_normal((n_samples, m.size))
    return normals @ m.factor.T


def nearest_distance(values: Sequence[float], target: float) -> float:
    """min_j |target - values_j|."""
    return float(np.min(np.abs(np.asarray(values, dtype=float) - target)))


def conditional_variance_at(
    model: CovarianceModel,
    target: SpacetimePoint,
    given: Sequence[SpacetimePoint],
    matrix: Optional[CovMatrix] = None,
) -> float:
    """Conditional variance of u(target) given u on `given`, building the Gram matrix when needed."""
    if matrix is None:
        matrix = model.gram_matrix([target, *given])
    return conditional_variance(matrix, 0, range(1, matrix.size))
