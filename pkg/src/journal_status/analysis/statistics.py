"""Correlation, least-squares regression and percentile helpers."""

import logging
import math
from typing import Sequence, Tuple

import numpy as np
from scipy.special import betainc

from ..metrics import MetricVector
from ..errors import DegenerateStatisticsError
from . import CorrelationResult, RegressionModel

logger = logging.getLogger(__name__)


def _paired(x: MetricVector, y: MetricVector, log: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    x.require_aligned(y)
    xs, ys = x.values, y.values
    if log:
        positive = (xs > 0) & (ys > 0)
        dropped = int(positive.size - positive.sum())
        if dropped:
            logger.warning("Log scale: dropped %d journal(s) with a non-positive value", dropped)
        xs, ys = np.log10(xs[positive]), np.log10(ys[positive])
    return xs, ys


def _is_constant(values: np.ndarray) -> bool:
    # compared before centering
    return bool(values.min() == values.max())


def _centered_sums(xs: np.ndarray, ys: np.ndarray) -> Tuple[float, float, float, float, float]:
    n = xs.size
    x_mean = math.fsum(xs.tolist()) / n
    y_mean = math.fsum(ys.tolist()) / n
    dx = xs - x_mean
    dy = ys - y_mean
    sxx = math.fsum((dx * dx).tolist())
    syy = math.fsum((dy * dy).tolist())
    sxy = math.fsum((dx * dy).tolist())
    return x_mean, y_mean, sxx, syy, sxy


def pearson(x: MetricVector, y: MetricVector, log: bool = False) -> CorrelationResult:
    """
    Pearson r between two metrics over the same journals.

    The p-value is two-tailed for the t statistic r * sqrt((n - 2) / (1 - r^2))
    with n - 2 degrees of freedom, evaluated as the regularized incomplete
    beta function I_{1 - r^2}((n - 2) / 2, 1 / 2).

    Args:
        x: First metric
        y: Second metric
        log: Correlate log10 values, dropping journals with a value <= 0

    Raises:
        MetricMismatchError: If the journal sets differ
        DegenerateStatisticsError: If n < 3 or either vector is constant
    """
    xs, ys = _paired(x, y, log)
    n = int(xs.size)
    if n < 3:
        raise DegenerateStatisticsError(f"correlation needs at least 3 journals, got {n}")
    if _is_constant(xs) or _is_constant(ys):
        raise DegenerateStatisticsError("correlation undefined: a metric is constant")
    _, _, sxx, syy, sxy = _centered_sums(xs, ys)

    r = sxy / math.sqrt(sxx * syy)
    r = min(1.0, max(-1.0, r))
    df = n - 2
    p_value = float(betainc(df / 2.0, 0.5, 1.0 - r * r))
    return CorrelationResult(r=r, p_value=p_value, n=n)


def fit_regression(x: MetricVector, y: MetricVector) -> RegressionModel:
    """
    Least-squares line of ``y`` (IF) on ``x`` (PR_w).

    Raises:
        MetricMismatchError: If the journal sets differ
        DegenerateStatisticsError: If n < 2 or ``x`` is constant
    """
    xs, ys = _paired(x, y)
    n = int(xs.size)
    if n < 2:
        raise DegenerateStatisticsError(f"regression needs at least 2 journals, got {n}")
    if _is_constant(xs):
        raise DegenerateStatisticsError("regression undefined: all PR_w values are identical")
    x_mean, y_mean, sxx, _, sxy = _centered_sums(xs, ys)
    slope = sxy / sxx
    return RegressionModel(intercept=y_mean - slope * x_mean, slope=slope, n=n)


def if_delta(model: RegressionModel, if_value: float, prw_value: float) -> float:
    """Actual IF minus the IF the regression line predicts for ``prw_value``."""
    return if_value - (model.intercept + model.slope * prw_value)


def percentile_threshold(values: Sequence[float], q: float) -> float:
    """
    Linear-interpolation percentile.

    With v sorted ascending and h = (n - 1) * q / 100, returns
    v[floor(h)] + (h - floor(h)) * (v[floor(h) + 1] - v[floor(h)]).

    Raises:
        ValueError: If ``values`` is empty or ``q`` is outside [0, 100]
    """
    if len(values) == 0:
        raise ValueError("Cannot calculate percentile of empty list")
    if not 0.0 <= q <= 100.0:
        raise ValueError(f"Percentile must be between 0 and 100, got {q}")

    return float(np.percentile(np.asarray(values, dtype=np.float64), q))
