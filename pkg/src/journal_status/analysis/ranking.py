"""Ranking journals by a metric and comparing rankings."""

from typing import List, Optional

import numpy as np

from ..metrics import MetricVector
from . import RankRow, RankTable


def rank_by(metric: MetricVector, top_k: Optional[int] = None) -> RankTable:
    """
    Sort journals by descending value.

    Ids are already ascending, so a stable sort on the negated values
    breaks ties by id.

    Args:
        metric: Vector to rank
        top_k: Keep only the first ``top_k`` rows (all rows if None)
    """
    order = np.argsort(-metric.values, kind="stable")
    if top_k is not None:
        order = order[:top_k]
    values = metric.values.tolist()
    rows = tuple(
        RankRow(rank, metric.ids[i], values[i])
        for rank, i in enumerate(order.tolist(), start=1)
    )
    return RankTable(metric.metric, rows)


def rank_overlap(table_a: RankTable, table_b: RankTable, k: int = 10) -> List[str]:
    """Ids found in the top ``k`` of both tables, ascending."""
    return sorted(set(table_a.ids[:k]) & set(table_b.ids[:k]))
