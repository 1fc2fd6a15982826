"""Report artifacts: rank tables, scatter data, classification lists and run manifests."""

import contextlib
import csv
import io
import json
import logging
import os
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .. import __version__
from ..analysis import ClassificationReport, RankTable
from ..analysis.ranking import rank_by
from ..config import PageRankParams, SelfCitationPolicy
from ..errors import ReportWriteError
from ..metrics import ConvergenceInfo, MetricName, MetricVector
from ..metrics.impact import y_factor

logger = logging.getLogger(__name__)

RANK_TABLE_FILES = {
    MetricName.IF: "rank_if.tsv",
    MetricName.PRW: "rank_prw.tsv",
    MetricName.Y: "rank_y.tsv",
    MetricName.PR: "rank_pr.tsv",
}
SCATTER_FILE = "scatter.csv"
CLASSIFICATION_FILE = "classification.csv"
MANIFEST_FILE = "manifest.json"


class ScatterLabel(Enum):
    """Highlight class of a point in the IF-versus-PR_w scatter."""
    POPULAR = "popular"
    PRESTIGIOUS = "prestigious"
    TOP_Y = "top_y"
    NONE = "none"


class ScatterRow(NamedTuple):
    id: str
    prw: float
    impact: float
    label: ScatterLabel


@dataclass(frozen=True)
class ScatterExport:
    """Plot-ready IF-versus-PR_w points, one per journal."""
    rows: Tuple[ScatterRow, ...]
    report: ClassificationReport

    def labeled(self) -> List[ScatterRow]:
        return [row for row in self.rows if row.label != ScatterLabel.NONE]


class RunManifest(BaseModel):
    """Everything needed to reproduce a run."""

    model_config = ConfigDict(populate_by_name=True)

    command: str
    software_version: str = __version__
    timestamp: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )
    inputs: Dict[str, str] = Field(default_factory=dict)  # path -> sha256
    pagerank: Optional[PageRankParams] = None
    self_citation_policy: SelfCitationPolicy = SelfCitationPolicy.INCLUDE
    categories: List[str] = Field(default_factory=list)
    year: int = 0
    low_percentile: Optional[float] = None
    high_percentile: Optional[float] = None
    top_k: Optional[int] = None
    log_transform: bool = False
    y_top_k: Optional[int] = None
    with_unweighted: bool = False
    summary: bool = False
    network_fingerprint: Optional[str] = None
    journal_count: Optional[int] = None
    edge_count: Optional[int] = None
    convergence: Dict[str, ConvergenceInfo] = Field(default_factory=dict)
    zero_article_journals: List[str] = Field(default_factory=list)

    def to_json(self) -> str:
        """Sorted-key, indented JSON text."""
        payload = self.model_dump(mode="json", by_alias=True)
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def export_scatter(
    if_vec: MetricVector,
    prw_vec: MetricVector,
    report: ClassificationReport,
    y_top_k: int = 10,
    y_vec: Optional[MetricVector] = None,
) -> ScatterExport:
    """
    Pair IF with PR_w per journal and attach highlight labels.

    Popular and Prestigious labels come from ``report``; the ``y_top_k``
    best journals by Y-factor are labeled top_y unless already labeled.

    Raises:
        MetricMismatchError: If the vectors cover different journals
    """
    if_vec.require_aligned(prw_vec)
    if y_vec is None:
        y_vec = y_factor(if_vec, prw_vec)
    else:
        if_vec.require_aligned(y_vec)

    labels: Dict[str, ScatterLabel] = {}
    if y_top_k > 0:
        for row in rank_by(y_vec, y_top_k).rows:
            labels[row.id] = ScatterLabel.TOP_Y
    for entry in report.popular:
        labels[entry.id] = ScatterLabel.POPULAR
    for entry in report.prestigious:
        labels[entry.id] = ScatterLabel.PRESTIGIOUS

    rows = tuple(
        ScatterRow(journal_id, prw, impact, labels.get(journal_id, ScatterLabel.NONE))
        for journal_id, prw, impact in zip(
            if_vec.ids, prw_vec.values.tolist(), if_vec.values.tolist()
        )
    )
    return ScatterExport(rows=rows, report=report)


def _number(value: float) -> str:
    return repr(float(value))


def render_rank_table(table: RankTable, titles: Optional[Mapping[str, str]] = None) -> str:
    """TSV with columns rank, id, title, value."""
    titles = titles or {}
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter="\t", lineterminator="\n")
    writer.writerow(["rank", "id", "title", "value"])
    for row in table.rows:
        writer.writerow([row.rank, row.id, titles.get(row.id, row.id), _number(row.value)])
    return buffer.getvalue()


def render_scatter(scatter: ScatterExport) -> str:
    """CSV with columns id, prw, if, label."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["id", "prw", "if", "label"])
    for row in scatter.rows:
        writer.writerow([row.id, _number(row.prw), _number(row.impact), row.label.value])
    return buffer.getvalue()


def render_classification(report: ClassificationReport) -> str:
    """CSV with columns class, rank, id, if, prw, if_delta under a settings comment."""
    t, m = report.thresholds, report.model
    buffer = io.StringIO()
    buffer.write(
        f"# prw_low={_number(t.prw_low)} prw_high={_number(t.prw_high)} "
        f"low_percentile={_number(t.low_percentile)} high_percentile={_number(t.high_percentile)} "
        f"intercept={_number(m.intercept)} slope={_number(m.slope)} n={m.n}\n"
    )
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["class", "rank", "id", "if", "prw", "if_delta"])
    for label, entries in (("popular", report.popular), ("prestigious", report.prestigious)):
        for rank, entry in enumerate(entries, start=1):
            writer.writerow([
                label, rank, entry.id,
                _number(entry.if_value), _number(entry.prw_value), _number(entry.if_delta),
            ])
    return buffer.getvalue()


def atomic_write_text(path: Path, text: str) -> Path:
    """
    Write ``text`` to a temporary file next to ``path`` and rename it into place.

    Raises:
        ReportWriteError: If the directory or file cannot be written
    """
    path = Path(path)
    directory = path.parent
    try:
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
    except OSError as e:
        raise ReportWriteError(f"cannot write to directory {directory}: {e}")

    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except OSError as e:
        with contextlib.suppress(OSError):
            os.unlink(tmp_name)
        raise ReportWriteError(f"cannot write {path}: {e}")
    logger.debug("Wrote %s", path)
    return path


def write_rank_tables(
    directory: Path,
    tables: Mapping[MetricName, RankTable],
    titles: Optional[Mapping[str, str]] = None,
) -> List[Path]:
    """Write one ``rank_<metric>.tsv`` per table, in IF, PRW, Y, PR order."""
    paths = []
    for metric, filename in RANK_TABLE_FILES.items():
        if metric in tables:
            text = render_rank_table(tables[metric], titles)
            paths.append(atomic_write_text(Path(directory) / filename, text))
    return paths


def write_manifest(directory: Path, manifest: RunManifest) -> Path:
    return atomic_write_text(Path(directory) / MANIFEST_FILE, manifest.to_json())


def write_classification(directory: Path, scatter: ScatterExport) -> List[Path]:
    """Write ``classification.csv`` and ``scatter.csv``."""
    directory = Path(directory)
    return [
        atomic_write_text(directory / CLASSIFICATION_FILE, render_classification(scatter.report)),
        atomic_write_text(directory / SCATTER_FILE, render_scatter(scatter)),
    ]


def write_report_bundle(
    directory: Path,
    tables: Mapping[MetricName, RankTable],
    scatter: ScatterExport,
    manifest: RunManifest,
    titles: Optional[Mapping[str, str]] = None,
) -> List[Path]:
    """
    Write the rank tables, scatter data, classification and manifest.

    Args:
        directory: Output directory (created if missing)
        tables: Rank tables keyed by metric; IF, PRW and Y are required
        scatter: Scatter export carrying its classification report
        manifest: Run provenance
        titles: Journal id -> display title for the rank tables

    Returns:
        Paths written, manifest last

    Raises:
        ValueError: If a required rank table is missing
        ReportWriteError: On I/O failure
    """
    missing = [m.value for m in (MetricName.IF, MetricName.PRW, MetricName.Y) if m not in tables]
    if missing:
        raise ValueError(f"missing rank table(s): {', '.join(missing)}")

    paths = write_rank_tables(directory, tables, titles)
    paths.extend(write_classification(directory, scatter))
    paths.append(write_manifest(directory, manifest))
    logger.info("Wrote %d report files to %s", len(paths), directory)
    return paths
