"""Log-log exponent fits and a multivariate normality test."""

import logging
import math
from typing import Any, Dict, Sequence, Tuple

import numpy as np
from scipy import stats

from fracspde.errors import DomainError

logger = logging.getLogger(__name__)


def fit_exponent(lags: Sequence[float], values: Sequence[float]) -> Tuple[float, float, float]:
    """
    Fit log(value) = slope * log(lag) + intercept by least squares.

    Args:
        lags: Positive abscissae (at least four)
        values: Positive ordinates

    Returns:
        (slope, intercept, r^2)

    Raises:
        DomainError: If fewer than four points are given or any input is not positive
    """
    x = np.asarray(lags, dtype=float)
    y = np.asarray(values, dtype=float)
    if x.shape != y.shape or x.size < 4:
        raise DomainError(f"need at least four (lag, value) pairs of equal length, got {x.size} and {y.size}")
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise DomainError("lags and values must be positive for a log-log fit")
    fit = stats.linregress(np.log(x), np.log(y))
    return float(fit.slope), float(fit.intercept), float(fit.rvalue**2)


class MardiaResult:
    """Mardia's multivariate skewness and kurtosis with their p-values."""

    def __init__(self, skewness: float, kurtosis: float, skew_pvalue: float, kurt_pvalue: float, n: int, dim: int):
        self.skewness = skewness
        self.kurtosis = kurtosis
        self.skew_pvalue = skew_pvalue
        self.kurt_pvalue = kurt_pvalue
        self.n = n
        self.dim = dim

    def passes(self, level: float = 0.01) -> bool:
        """Whether neither statistic rejects normality at `level`."""
        return self.skew_pvalue > level and self.kurt_pvalue > level

    def to_dict(self) -> Dict[str, Any]:
        return {
            "skewness": self.skewness,
            "kurtosis": self.kurtosis,
            "skew_pvalue": self.skew_pvalue,
            "kurt_pvalue": self.kurt_pvalue,
            "n": self.n,
            "dim": self.dim,
        }


def mardia_test(samples: np.ndarray) -> MardiaResult:
    """
    Mardia's test on rows of `samples` (shape n x p).

    Skewness n b1 / 6 is compared with chi^2 on p(p+1)(p+2)/6 degrees of
    freedom; kurtosis b2 is standardized with mean p(p+2) and variance
    8p(p+2)/n and compared with the normal law (two-sided).
    """
    data = np.asarray(samples, dtype=float)
    if data.ndim != 2 or data.shape[0] <= data.shape[1]:
        raise DomainError(f"need a 2-D array with more rows than columns, got shape {data.shape}")
    n, dim = data.shape
    centred = data - data.mean(axis=0)
    cov = centred.T @ centred / n
    g = centred @ np.linalg.solve(cov, centred.T)

    b1 = float(np.sum(g**3)) / n**2
    b2 = float(np.sum(np.diag(g) ** 2)) / n
    dof = dim * (dim + 1) * (dim + 2) / 6.0
    skew_stat = n * b1 / 6.0
    kurt_z = (b2 - dim * (dim + 2)) / math.sqrt(8.0 * dim * (dim + 2) / n)
    result = MardiaResult(
        skewness=b1,
        kurtosis=b2,
        skew_pvalue=float(stats.chi2.sf(skew_stat, dof)),
        kurt_pvalue=float(2.0 * stats.norm.sf(abs(kurt_z))),
        n=n,
        dim=dim,
    )
    logger.debug(f"Mardia test: b1={b1:.4g} (p={result.skew_pvalue:.3g}), b2={b2:.4g} (p={result.kurt_pvalue:.3g})")
    return result
