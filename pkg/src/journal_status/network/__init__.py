"""Journal citation network data model and graph operations."""

import hashlib
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Tuple

import numpy as np
from scipy.sparse import csr_matrix

from ..config import SelfCitationPolicy
from ..errors import InputError

logger = logging.getLogger(__name__)

EdgeTriple = Tuple[str, str, int]


@dataclass(frozen=True)
class Journal:
    """A journal node with the metadata the status metrics need."""
    id: str
    title: str
    article_count: int  # papers published in the two years before the citation year
    categories: FrozenSet[str] = frozenset()

    def __post_init__(self):
        if not self.id:
            raise InputError("journal id must be non-empty")
        if self.article_count < 0:
            raise InputError(f"negative article count for journal {self.id!r}")
        object.__setattr__(self, "categories", frozenset(self.categories))


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class CitationNetwork:
    """
    Weighted directed journal graph for one citation year.

    Journals are held in ascending id order and journal indices follow
    that order. Edges are parallel arrays sorted by (citing, cited);
    every weight is a positive citation count.
    """
    year: int
    journals: Tuple[Journal, ...]
    citing: np.ndarray
    cited: np.ndarray
    weights: np.ndarray
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {j.id: i for i, j in enumerate(self.journals)})

    @classmethod
    def from_arrays(
        cls,
        journals: Iterable[Journal],
        citing: np.ndarray,
        cited: np.ndarray,
        weights: np.ndarray,
        year: int = 0,
    ) -> "CitationNetwork":
        """
        Build a network from index arrays referring to ``journals``.

        Indices refer to the order of ``journals`` as given; the result
        is re-indexed to ascending id order. Duplicate (citing, cited)
        pairs are summed.

        Raises:
            InputError: On duplicate ids, empty journal list, out-of-range
                indices or non-positive weights
        """
        journal_list = list(journals)
        if not journal_list:
            raise InputError("a citation network needs at least one journal")

        seen = set()
        for journal in journal_list:
            if journal.id in seen:
                raise InputError(f"duplicate journal id {journal.id!r}")
            seen.add(journal.id)

        n = len(journal_list)
        citing = np.asarray(citing, dtype=np.int64)
        cited = np.asarray(cited, dtype=np.int64)
        weights = np.asarray(weights, dtype=np.int64)
        if not (citing.shape == cited.shape == weights.shape):
            raise InputError("edge arrays must have equal length")
        if weights.size and weights.min() < 1:
            raise InputError("non-positive citation count in edge list")
        if citing.size and (
            min(citing.min(), cited.min()) < 0 or max(citing.max(), cited.max()) >= n
        ):
            raise InputError("edge endpoint outside the journal list")

        # Re-index to ascending id order
        order = sorted(range(n), key=lambda i: journal_list[i].id)
        remap = np.empty(n, dtype=np.int64)
        remap[order] = np.arange(n, dtype=np.int64)
        citing = remap[citing]
        cited = remap[cited]

        # Sort by (citing, cited) and sum duplicate pairs
        keys = citing * n + cited
        unique_keys, inverse = np.unique(keys, return_inverse=True)
        summed = np.zeros(unique_keys.size, dtype=np.int64)
        np.add.at(summed, inverse, weights)

        return cls(
            year=year,
            journals=tuple(journal_list[i] for i in order),
            citing=_frozen(unique_keys // n),
            cited=_frozen(unique_keys % n),
            weights=_frozen(summed),
        )

    @property
    def size(self) -> int:
        """Number of journals N."""
        return len(self.journals)

    @property
    def edge_count(self) -> int:
        return int(self.weights.size)

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(j.id for j in self.journals)

    def index_of(self, journal_id: str) -> int:
        try:
            return self._index[journal_id]
        except KeyError:
            raise InputError(f"unknown journal id {journal_id!r}")

    def journal(self, journal_id: str) -> Journal:
        return self.journals[self.index_of(journal_id)]

    def __contains__(self, journal_id: str) -> bool:
        return journal_id in self._index

    def iter_edges(self) -> Iterator[EdgeTriple]:
        """Yield (citing, cited, count) in ascending (citing, cited) order."""
        ids = self.ids
        for j, i, w in zip(self.citing.tolist(), self.cited.tolist(), self.weights.tolist()):
            yield ids[j], ids[i], w

    @property
    def edges(self) -> Dict[Tuple[str, str], int]:
        """Edge map (citing, cited) -> citation count."""
        return {(a, b): w for a, b, w in self.iter_edges()}

    @cached_property
    def article_counts(self) -> np.ndarray:
        return _frozen(np.array([j.article_count for j in self.journals], dtype=np.int64))

    @cached_property
    def in_strength(self) -> np.ndarray:
        """Total citations received per journal."""
        totals = np.zeros(self.size, dtype=np.int64)
        np.add.at(totals, self.cited, self.weights)
        return _frozen(totals)

    @cached_property
    def out_strength(self) -> np.ndarray:
        """Total citations made per journal."""
        totals = np.zeros(self.size, dtype=np.int64)
        np.add.at(totals, self.citing, self.weights)
        return _frozen(totals)

    @cached_property
    def out_degree(self) -> np.ndarray:
        """Number of distinct journals each journal cites."""
        return _frozen(np.bincount(self.citing, minlength=self.size).astype(np.int64))

    @cached_property
    def fingerprint(self) -> str:
        """Stable content hash used for provenance of derived metrics."""
        digest = hashlib.sha256()
        digest.update(f"year={self.year}\n".encode("utf-8"))
        for journal in self.journals:
            record = "\t".join([
                journal.id,
                journal.title,
                str(journal.article_count),
                "|".join(sorted(journal.categories)),
            ])
            digest.update(record.encode("utf-8") + b"\n")
        for array in (self.citing, self.cited, self.weights):
            digest.update(np.ascontiguousarray(array, dtype="<i8").tobytes())
        return digest.hexdigest()[:16]

    def same_as(self, other: "CitationNetwork") -> bool:
        """Structural equality (journals, edges and year)."""
        return (
            self.year == other.year
            and self.journals == other.journals
            and np.array_equal(self.citing, other.citing)
            and np.array_equal(self.cited, other.cited)
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True, eq=False)
class PropagationWeights:
    """Row-stochastic share of each journal's prestige passed to the journals it cites."""
    size: int
    citing: np.ndarray
    cited: np.ndarray
    values: np.ndarray
    dangling: FrozenSet[str]
    dangling_mask: np.ndarray = field(repr=False)
    ids: Tuple[str, ...] = field(repr=False)

    def as_dict(self) -> Dict[Tuple[str, str], float]:
        """Map (citing, cited) -> w(citing, cited)."""
        return {
            (self.ids[j], self.ids[i]): w
            for j, i, w in zip(self.citing.tolist(), self.cited.tolist(), self.values.tolist())
        }

    def transposed_matrix(self) -> csr_matrix:
        """
        Sparse matrix Mt with Mt[i, j] = w(j, i).

        Row i lists the journals citing i in ascending index order, so a
        product ``Mt @ x`` accumulates contributions in ascending citing id.
        """
        matrix = csr_matrix(
            (self.values, (self.cited, self.citing)),
            shape=(self.size, self.size),
            dtype=np.float64,
        )
        matrix.sort_indices()
        return matrix


def build_network(
    journals: Iterable[Journal],
    edges: Iterable[EdgeTriple],
    year: int = 0,
    policy: SelfCitationPolicy = SelfCitationPolicy.INCLUDE,
) -> CitationNetwork:
    """
    Assemble a citation network from journal records and citation triples.

    Args:
        journals: Journal records
        edges: (citing, cited, count) triples; duplicates are summed
        year: Citation year recorded on the network
        policy: Whether self-citations are kept

    Returns:
        CitationNetwork

    Raises:
        InputError: If an edge references an unknown journal
    """
    journal_list = list(journals)
    index = {j.id: i for i, j in enumerate(journal_list)}

    citing: List[int] = []
    cited: List[int] = []
    weights: List[int] = []
    dropped = 0
    for source, target, count in edges:
        for endpoint in (source, target):
            if endpoint not in index:
                raise InputError(
                    f"edge ({source}, {target}) references unknown journal {endpoint!r}"
                )
        if source == target and policy == SelfCitationPolicy.EXCLUDE:
            dropped += 1
            continue
        citing.append(index[source])
        cited.append(index[target])
        weights.append(count)

    if dropped:
        logger.info("Excluded %d self-citation edges", dropped)

    return CitationNetwork.from_arrays(
        journal_list,
        np.array(citing, dtype=np.int64),
        np.array(cited, dtype=np.int64),
        np.array(weights, dtype=np.int64),
        year=year,
    )


def induced_subnetwork(net: CitationNetwork, codes: Iterable[str]) -> CitationNetwork:
    """
    Keep the journals tagged with any of ``codes`` and the edges among them.

    Raises:
        InputError: If ``codes`` is empty or no journal matches
    """
    wanted = frozenset(codes)
    if not wanted:
        raise InputError("category code set must not be empty")

    keep = np.array([bool(j.categories & wanted) for j in net.journals], dtype=bool)
    if not keep.any():
        raise InputError(f"no journal matches categories {', '.join(sorted(wanted))}")

    remap = np.full(net.size, -1, dtype=np.int64)
    remap[keep] = np.arange(int(keep.sum()), dtype=np.int64)
    edge_mask = keep[net.citing] & keep[net.cited]

    sub = CitationNetwork.from_arrays(
        [j for j, k in zip(net.journals, keep) if k],
        remap[net.citing[edge_mask]],
        remap[net.cited[edge_mask]],
        net.weights[edge_mask],
        year=net.year,
    )
    logger.info(
        "Subnetwork for %s: %d of %d journals, %d of %d edges",
        ",".join(sorted(wanted)), sub.size, net.size, sub.edge_count, net.edge_count,
    )
    return sub


def _weights_from_values(net: CitationNetwork, values: np.ndarray) -> PropagationWeights:
    dangling_mask = net.out_degree == 0
    return PropagationWeights(
        size=net.size,
        citing=net.citing,
        cited=net.cited,
        values=_frozen(values),
        dangling=frozenset(j.id for j, d in zip(net.journals, dangling_mask) if d),
        dangling_mask=_frozen(dangling_mask),
        ids=net.ids,
    )


def propagation_weights(net: CitationNetwork) -> PropagationWeights:
    """
    Normalize each journal's outgoing citation counts to sum to one.

    w(j, i) = W(j, i) / sum_k W(j, k); journals citing nobody are dangling.
    """
    totals = net.out_strength[net.citing].astype(np.float64)
    values = net.weights.astype(np.float64) / totals
    return _weights_from_values(net, values)


def uniform_propagation_weights(net: CitationNetwork) -> PropagationWeights:
    """Unweighted variant: every out-link of j carries 1 / O(j)."""
    values = 1.0 / net.out_degree[net.citing].astype(np.float64)
    return _weights_from_values(net, values)
