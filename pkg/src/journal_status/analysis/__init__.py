"""Result types of the ranking and outlier analysis."""

from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from ..metrics import MetricName


class RankRow(NamedTuple):
    rank: int
    id: str
    value: float


@dataclass(frozen=True)
class RankTable:
    """Journals ordered by one metric, best first; ties broken by ascending id."""
    metric: MetricName
    rows: Tuple[RankRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(row.id for row in self.rows)


@dataclass(frozen=True)
class CorrelationResult:
    """Pearson product-moment correlation with its two-tailed p-value."""
    r: float
    p_value: Optional[float]
    n: int


@dataclass(frozen=True)
class RegressionModel:
    """Ordinary least squares line IF = intercept + slope * PR_w."""
    intercept: float
    slope: float
    n: int

    def predict(self, x: float) -> float:
        return self.intercept + self.slope * x


class OutlierEntry(NamedTuple):
    id: str
    if_value: float
    prw_value: float
    if_delta: float


@dataclass(frozen=True)
class Thresholds:
    """PR_w cut-offs and the percentiles they were taken at."""
    prw_low: float
    prw_high: float
    low_percentile: float
    high_percentile: float


@dataclass(frozen=True)
class ClassificationReport:
    """
    Popular and Prestigious journals of one network.

    Popular: PR_w below the low cut and IF above the regression line,
    largest deviation first. Prestigious: PR_w above the high cut and IF
    below the line, most negative deviation first.
    """
    popular: Tuple[OutlierEntry, ...]
    prestigious: Tuple[OutlierEntry, ...]
    thresholds: Thresholds
    model: RegressionModel
