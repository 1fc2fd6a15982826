"""Test fixtures for Journal Status tests."""

from pathlib import Path
from typing import Dict, Iterable, Tuple

import numpy as np

from journal_status.metrics import MetricName, MetricVector
from journal_status.network import CitationNetwork, Journal, build_network

FIXTURES_DIR = Path(__file__).parent
JOURNALS_CSV = FIXTURES_DIR / "journals.csv"
EDGES_CSV = FIXTURES_DIR / "edges.csv"

# journals.csv / edges.csv at a glance
SAMPLE_JOURNAL_COUNT = 12
SAMPLE_EDGE_COUNT = 34           # after summing the duplicated PRA -> PRL row
SAMPLE_SELF_CITATION_EDGES = 11
PHYSICS_JOURNALS = ("APJ", "CMP", "NATURE", "PRA", "PRB", "PRL", "RMP", "SCIENCE")
MEDICINE_JOURNALS = ("JAMA", "LANCET", "NATURE", "NEJM", "SCIENCE")


def journal(journal_id: str, articles: int = 1, categories: Iterable[str] = ()) -> Journal:
    return Journal(journal_id, f"{journal_id} Journal", articles, frozenset(categories))


def make_network(
    edges: Iterable[Tuple[str, str, int]],
    ids: Iterable[str] = (),
    articles: Dict[str, int] = None,
    categories: Dict[str, Iterable[str]] = None,
) -> CitationNetwork:
    """Network over ``ids`` plus every edge endpoint; one article per journal unless given."""
    edges = list(edges)
    articles = articles or {}
    categories = categories or {}
    all_ids = set(ids)
    for citing, cited, _ in edges:
        all_ids.update((citing, cited))
    journals = [
        journal(i, articles.get(i, 1), categories.get(i, ())) for i in sorted(all_ids)
    ]
    return build_network(journals, edges)


# A -> B:2, A -> C:1, B -> A:1, C -> A:1
WEIGHTED_TRIANGLE = [("A", "B", 2), ("A", "C", 1), ("B", "A", 1), ("C", "A", 1)]
TWO_CYCLE = [("A", "B", 1), ("B", "A", 1)]
THREE_CHAIN = [("A", "B", 4), ("B", "C", 4), ("C", "A", 4)]


def random_network(rng: np.random.Generator, size: int, density: float = None) -> CitationNetwork:
    """Random weighted network with integer counts 1-10 and self-citations allowed."""
    if density is None:
        density = rng.uniform(0.1, 0.9)
    journals = [
        Journal(f"J{i:02d}", f"Journal {i}", int(rng.integers(1, 50))) for i in range(size)
    ]
    citing, cited = np.nonzero(rng.random((size, size)) < density)
    weights = rng.integers(1, 11, size=citing.size)
    return CitationNetwork.from_arrays(journals, citing, cited, weights)


def vector(metric: MetricName, values: Dict[str, float], fingerprint: str = "test") -> MetricVector:
    return MetricVector.from_mapping(metric, values, fingerprint)


POPULAR_ID = "POP"
PRESTIGIOUS_ID = "PRE"


def planted_outlier_vectors(
    rng: np.random.Generator,
    size: int = 20,
) -> Tuple[MetricVector, MetricVector]:
    """
    IF and PR_w for ``size`` journals with two planted outliers.

    ``size - 2`` journals sit exactly on IF = a + b * x with PR_w = x / 1000
    and x spread evenly over 1..size-2. POP sits at x = 2.5 with IF raised
    by d; PRE sits at x = size - 2.5 with IF lowered by d.
    """
    m = size - 2
    a = rng.uniform(5.0, 10.0)
    b = rng.uniform(0.1, 1.0)
    d = rng.uniform(1.0, 5.0)
    xs = np.arange(1, m + 1, dtype=np.float64) + rng.uniform(-0.2, 0.2, size=m)

    if_values = {f"J{k:03d}": a + b * x for k, x in enumerate(xs.tolist())}
    prw_values = {f"J{k:03d}": x / 1000.0 for k, x in enumerate(xs.tolist())}

    x_pop, x_pre = 2.5, m - 0.5
    if_values[POPULAR_ID] = a + b * x_pop + d
    prw_values[POPULAR_ID] = x_pop / 1000.0
    if_values[PRESTIGIOUS_ID] = a + b * x_pre - d
    prw_values[PRESTIGIOUS_ID] = x_pre / 1000.0

    return vector(MetricName.IF, if_values), vector(MetricName.PRW, prw_values)
