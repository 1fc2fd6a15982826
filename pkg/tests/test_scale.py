"""Performance checks on a network the size of a full citation-report year."""

import time

import numpy as np
import pytest
from click.testing import CliRunner

from journal_status.cli import main
from journal_status.config import PageRankParams
from journal_status.metrics.pagerank import weighted_pagerank
from journal_status.metrics.suite import compute_status_metrics
from journal_status.network import CitationNetwork, Journal
from journal_status.network.io import dump_edges, dump_journals

JOURNALS = 5710
CITATION_PAIRS = 1_050_000


@pytest.fixture(scope="module")
def large_network():
    rng = np.random.default_rng(2003)
    journals = [
        Journal(f"J{i:05d}", f"Journal {i}", int(n))
        for i, n in enumerate(rng.integers(0, 2000, size=JOURNALS))
    ]
    citing = rng.integers(0, JOURNALS, size=CITATION_PAIRS)
    cited = rng.integers(0, JOURNALS, size=CITATION_PAIRS)
    weights = rng.integers(1, 50, size=CITATION_PAIRS)
    return CitationNetwork.from_arrays(journals, citing, cited, weights, year=2003)


@pytest.mark.slow
class TestScale:
    """Tests for runtime and determinism at scale."""

    def test_edge_count(self, large_network):
        """Test that the generated network has about a million edges."""
        assert large_network.size == JOURNALS
        assert large_network.edge_count > 1_000_000

    def test_converges_quickly(self, large_network):
        """Test convergence within 500 iterations and 5 seconds."""
        start = time.perf_counter()
        prw, info = weighted_pagerank(large_network, PageRankParams())
        elapsed = time.perf_counter() - start

        assert info.converged
        assert info.iterations < 500
        assert elapsed < 5.0
        assert abs(prw.values.sum() - 1.0) <= 1e-6

    def test_deterministic(self, large_network):
        """Test bit-identical metrics across runs."""
        first = compute_status_metrics(large_network, PageRankParams())
        second = compute_status_metrics(large_network, PageRankParams())

        for a, b in zip(first.vectors().values(), second.vectors().values()):
            assert a.values.tobytes() == b.values.tobytes()


@pytest.fixture(scope="module")
def large_network_files(large_network, tmp_path_factory):
    directory = tmp_path_factory.mktemp("large")
    journals, edges = directory / "journals.csv", directory / "edges.csv"
    with open(journals, "w", encoding="utf-8", newline="") as handle:
        dump_journals(large_network, handle)
    with open(edges, "w", encoding="utf-8", newline="") as handle:
        dump_edges(large_network, handle)
    return ["-j", str(journals), "-e", str(edges)]


@pytest.mark.slow
class TestScaleCli:
    """Tests for repeated command-line runs at scale."""

    def test_report_byte_identical(self, large_network_files, tmp_path):
        """Test that two report runs write identical rank tables and scatter."""
        runner = CliRunner()
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            result = runner.invoke(main, ["report", *large_network_files, "-o", str(out)])
            assert result.exit_code == 0, result.output

        for name in ("rank_if.tsv", "rank_prw.tsv", "rank_y.tsv", "scatter.csv",
                     "classification.csv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()
        assert len((a / "rank_prw.tsv").read_text().splitlines()) == JOURNALS + 1
