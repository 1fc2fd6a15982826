"""
Prestige-side metrics: PageRank and Weighted PageRank.

Both share one power iteration over the transposed propagation matrix:

    x'(i) = (1 - lambda) / N + lambda * sum_j x(j) * w(j, i) + dangling share

Dangling journals (no outgoing citations) either spread their mass
uniformly over all journals or keep it, depending on the policy.
"""

import logging
from typing import Tuple

import numpy as np

from ..config import DanglingPolicy, PageRankParams
from ..errors import NetworkTooLargeError
from ..network import (
    CitationNetwork,
    PropagationWeights,
    propagation_weights,
    uniform_propagation_weights,
)
from . import ConvergenceInfo, MetricName, MetricVector

logger = logging.getLogger(__name__)

DEFAULT_EXACT_LIMIT = 64


def power_iteration(
    weights: PropagationWeights,
    params: PageRankParams,
) -> Tuple[np.ndarray, ConvergenceInfo]:
    """
    Iterate from the uniform vector until the L1 update drops below tolerance.

    Returns:
        (last iterate, convergence info); the last iterate is returned even
        when the iteration cap is hit
    """
    n = weights.size
    damping = params.damping
    floor = (1.0 - damping) / n
    matrix = weights.transposed_matrix()
    dangling = weights.dangling_mask
    uniform = params.dangling_policy == DanglingPolicy.UNIFORM

    x = np.full(n, 1.0 / n)
    residual = float("inf")
    iterations = 0
    for iterations in range(1, params.max_iterations + 1):
        x_new = damping * (matrix @ x)
        if uniform:
            x_new += floor + damping * x[dangling].sum() / n
        else:
            x_new += floor
            x_new[dangling] += damping * x[dangling]
            x_new /= x_new.sum()
        residual = float(np.abs(x_new - x).sum())
        x = x_new
        if residual < params.tolerance:
            logger.debug("Power iteration converged after %d iterations (residual %.3e)",
                         iterations, residual)
            return x, ConvergenceInfo(iterations, residual, True)

    logger.warning(
        "Power iteration stopped after %d iterations with residual %.3e (tolerance %.1e)",
        iterations, residual, params.tolerance,
    )
    return x, ConvergenceInfo(iterations, residual, False)


def pagerank_unweighted(
    net: CitationNetwork,
    params: PageRankParams = PageRankParams(),
) -> Tuple[MetricVector, ConvergenceInfo]:
    """Classic PageRank: prestige split evenly across the distinct journals cited."""
    values, info = power_iteration(uniform_propagation_weights(net), params)
    return MetricVector(MetricName.PR, net.ids, values, net.fingerprint, params.damping), info


def weighted_pagerank(
    net: CitationNetwork,
    params: PageRankParams = PageRankParams(),
) -> Tuple[MetricVector, ConvergenceInfo]:
    """PageRank with prestige split in proportion to citation counts."""
    values, info = power_iteration(propagation_weights(net), params)
    return MetricVector(MetricName.PRW, net.ids, values, net.fingerprint, params.damping), info


def solve_pagerank_exact(
    net: CitationNetwork,
    params: PageRankParams = PageRankParams(),
    max_size: int = DEFAULT_EXACT_LIMIT,
) -> MetricVector:
    """
    Weighted PageRank by a dense linear solve of (I - lambda P) x = (1 - lambda)/N.

    P is the column-stochastic matrix of the power iteration, dangling
    columns filled per the dangling policy. Reference oracle for small networks.

    Raises:
        NetworkTooLargeError: If the network has more than ``max_size`` journals
    """
    n = net.size
    if n > max_size:
        raise NetworkTooLargeError(
            f"exact solve limited to {max_size} journals, network has {n}"
        )

    weights = propagation_weights(net)
    transition = weights.transposed_matrix().toarray()
    dangling = np.flatnonzero(weights.dangling_mask)
    if params.dangling_policy == DanglingPolicy.UNIFORM:
        transition[:, dangling] = 1.0 / n
    else:
        transition[dangling, dangling] = 1.0

    system = np.eye(n) - params.damping * transition
    rhs = np.full(n, (1.0 - params.damping) / n)
    values = np.linalg.solve(system, rhs)
    # Round-off can leave -0.0 or tiny negatives on exact zeros
    values = np.clip(values, 0.0, None)
    return MetricVector(MetricName.PRW, net.ids, values, net.fingerprint, params.damping)
