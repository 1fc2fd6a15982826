"""Popular / Prestigious journal classification from regression residuals."""

import logging
from typing import List, Optional

from ..metrics import MetricVector
from . import ClassificationReport, OutlierEntry, Thresholds
from .statistics import fit_regression, if_delta, percentile_threshold

logger = logging.getLogger(__name__)

# |IF_Δ| at or below this fraction of max(1, max|IF|) counts as on the line
RESIDUAL_TOLERANCE = 1e-9


class OutlierClassifier:
    """
    Finds journals whose IF strays from what their PR_w predicts.

    A journal is Popular when its PR_w lies below the low percentile and
    its IF lies above the IF-on-PR_w regression line; Prestigious when its
    PR_w lies above the high percentile and its IF below the line.
    Residuals within RESIDUAL_TOLERANCE of the line count as on it.
    """

    def __init__(
        self,
        low_percentile: float = 40.0,
        high_percentile: float = 90.0,
        top_k: Optional[int] = None,
    ):
        """
        Initialize classifier.

        Args:
            low_percentile: PR_w percentile under which prestige counts as very low
            high_percentile: PR_w percentile above which prestige counts as very high
            top_k: Keep at most this many journals per class
        """
        if low_percentile >= high_percentile:
            raise ValueError(
                f"low percentile ({low_percentile:g}) must be below "
                f"high percentile ({high_percentile:g})"
            )
        self.low_percentile = low_percentile
        self.high_percentile = high_percentile
        self.top_k = top_k

    def classify(self, if_vec: MetricVector, prw_vec: MetricVector) -> ClassificationReport:
        """
        Classify every journal covered by both vectors.

        Raises:
            MetricMismatchError: If the vectors cover different journals
            DegenerateStatisticsError: If the regression is undefined
        """
        if_vec.require_aligned(prw_vec)
        prw_values = prw_vec.values.tolist()
        if_values = if_vec.values.tolist()

        thresholds = Thresholds(
            prw_low=percentile_threshold(prw_values, self.low_percentile),
            prw_high=percentile_threshold(prw_values, self.high_percentile),
            low_percentile=self.low_percentile,
            high_percentile=self.high_percentile,
        )
        model = fit_regression(prw_vec, if_vec)
        on_line = RESIDUAL_TOLERANCE * max(1.0, max(abs(v) for v in if_values))

        popular: List[OutlierEntry] = []
        prestigious: List[OutlierEntry] = []
        for journal_id, if_value, prw_value in zip(if_vec.ids, if_values, prw_values):
            delta = if_delta(model, if_value, prw_value)
            entry = OutlierEntry(journal_id, if_value, prw_value, delta)
            if prw_value < thresholds.prw_low and delta > on_line:
                popular.append(entry)
            elif prw_value > thresholds.prw_high and delta < -on_line:
                prestigious.append(entry)

        popular.sort(key=lambda e: (-e.if_delta, e.id))
        prestigious.sort(key=lambda e: (e.if_delta, e.id))
        logger.info(
            "Classified %d popular and %d prestigious journal(s) (PR_w cuts %.4g / %.4g)",
            len(popular), len(prestigious), thresholds.prw_low, thresholds.prw_high,
        )
        if self.top_k is not None:
            popular = popular[:self.top_k]
            prestigious = prestigious[:self.top_k]

        return ClassificationReport(
            popular=tuple(popular),
            prestigious=tuple(prestigious),
            thresholds=thresholds,
            model=model,
        )


def classify_outliers(
    if_vec: MetricVector,
    prw_vec: MetricVector,
    low_percentile: float = 40.0,
    high_percentile: float = 90.0,
    top_k: Optional[int] = None,
) -> ClassificationReport:
    """Convenience wrapper around ``OutlierClassifier``."""
    classifier = OutlierClassifier(low_percentile, high_percentile, top_k)
    return classifier.classify(if_vec, prw_vec)
