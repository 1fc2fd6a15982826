"""Compute the full set of status metrics for one network."""

from dataclasses import dataclass
from typing import Dict, Optional

from ..config import PageRankParams
from ..network import CitationNetwork
from . import ConvergenceInfo, MetricName, MetricVector
from .impact import impact_factor, y_factor
from .pagerank import pagerank_unweighted, weighted_pagerank


@dataclass(frozen=True)
class StatusMetrics:
    """IF, PR_w and Y for one network, plus PR when requested."""
    impact: MetricVector
    prestige: MetricVector
    combined: MetricVector
    convergence: Dict[MetricName, ConvergenceInfo]
    unweighted: Optional[MetricVector] = None

    @property
    def converged(self) -> bool:
        return all(info.converged for info in self.convergence.values())

    def vectors(self) -> Dict[MetricName, MetricVector]:
        result = {
            MetricName.IF: self.impact,
            MetricName.PRW: self.prestige,
            MetricName.Y: self.combined,
        }
        if self.unweighted is not None:
            result[MetricName.PR] = self.unweighted
        return result


def compute_status_metrics(
    net: CitationNetwork,
    params: PageRankParams,
    with_unweighted: bool = False,
) -> StatusMetrics:
    """
    Run every metric on ``net`` with the same PageRank parameters.

    Args:
        net: Network (or subnetwork) to analyze
        params: PageRank parameters
        with_unweighted: Also compute the unweighted PageRank

    Returns:
        StatusMetrics
    """
    if_vec = impact_factor(net)
    prw_vec, prw_info = weighted_pagerank(net, params)
    convergence = {MetricName.PRW: prw_info}

    pr_vec = None
    if with_unweighted:
        pr_vec, pr_info = pagerank_unweighted(net, params)
        convergence[MetricName.PR] = pr_info

    return StatusMetrics(
        impact=if_vec,
        prestige=prw_vec,
        combined=y_factor(if_vec, prw_vec),
        convergence=convergence,
        unweighted=pr_vec,
    )
