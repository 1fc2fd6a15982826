"""Popularity-side metrics: Impact Factor and the IF x PageRank product."""

import logging

import numpy as np

from ..network import CitationNetwork
from . import MetricName, MetricVector

logger = logging.getLogger(__name__)


def zero_article_journals(net: CitationNetwork) -> list:
    """Ids of journals whose IF is defined as 0 because they published nothing."""
    return [j.id for j in net.journals if j.article_count == 0]


def impact_factor(net: CitationNetwork) -> MetricVector:
    """
    Citations received divided by articles published, per journal.

    Journals with ``article_count == 0`` get IF 0.
    """
    received = net.in_strength.astype(np.float64)
    articles = net.article_counts
    values = np.zeros(net.size, dtype=np.float64)
    published = articles > 0
    values[published] = received[published] / articles[published]

    skipped = zero_article_journals(net)
    if skipped:
        logger.warning(
            "%d journal(s) have no articles; their IF is set to 0 (e.g. %s)",
            len(skipped), ", ".join(skipped[:3]),
        )
    return MetricVector(MetricName.IF, net.ids, values, net.fingerprint)


def y_factor(if_vec: MetricVector, prw_vec: MetricVector) -> MetricVector:
    """
    Y(v) = IF(v) x PR_w(v).

    Raises:
        MetricMismatchError: If the vectors cover different journals or networks
    """
    if_vec.require_aligned(prw_vec, check_fingerprint=True)
    return MetricVector(
        MetricName.Y,
        if_vec.ids,
        if_vec.values * prw_vec.values,
        if_vec.fingerprint,
        damping=prw_vec.damping,
    )
