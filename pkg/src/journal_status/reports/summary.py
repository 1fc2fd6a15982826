"""Markdown run summary."""

from pathlib import Path
from typing import Mapping, Optional

from jinja2 import Environment, FileSystemLoader, select_autoescape

from ..analysis import ClassificationReport, CorrelationResult, RankTable
from ..analysis.ranking import rank_overlap
from ..metrics import MetricName
from . import atomic_write_text

SUMMARY_FILE = "summary.md"


class SummaryGenerator:
    """Generates summary.md: top rankings side by side, correlation and outliers."""

    def __init__(self, template_dir: Optional[Path] = None):
        """
        Initialize generator.

        Args:
            template_dir: Path to templates directory (auto-detected if None)
        """
        if template_dir is None:
            template_dir = Path(__file__).parent.parent / "templates"

        self.template_dir = template_dir
        self.env = Environment(
            loader=FileSystemLoader(template_dir),
            autoescape=select_autoescape(['html', 'xml']),
            keep_trailing_newline=True,
        )

    def render(
        self,
        tables: Mapping[MetricName, RankTable],
        report: ClassificationReport,
        correlation: Optional[CorrelationResult],
        titles: Mapping[str, str],
        journal_count: int,
        fingerprint: str,
        top_k: int = 10,
    ) -> str:
        """
        Render the summary markdown.

        Args:
            tables: Rank tables for IF, PRW and Y
            report: Popular / Prestigious classification
            correlation: IF-versus-PR_w correlation (None if undefined)
            titles: Journal id -> display title
            journal_count: Journals in the analyzed network
            fingerprint: Network fingerprint
            top_k: Rows per ranking column
        """
        if_rows = tables[MetricName.IF].rows[:top_k]
        prw_rows = tables[MetricName.PRW].rows[:top_k]
        y_rows = tables[MetricName.Y].rows[:top_k]
        ranking = [
            (i + 1,
             if_rows[i] if i < len(if_rows) else None,
             prw_rows[i] if i < len(prw_rows) else None,
             y_rows[i] if i < len(y_rows) else None)
            for i in range(max(len(if_rows), len(prw_rows), len(y_rows)))
        ]
        context = {
            'journal_count': journal_count,
            'fingerprint': fingerprint,
            'top_k': top_k,
            'ranking': ranking,
            'titles': titles,
            'overlap': rank_overlap(tables[MetricName.IF], tables[MetricName.PRW], top_k),
            'correlation': correlation,
            'report': report,
        }
        template = self.env.get_template('summary.md')
        return template.render(**context)

    def generate(self, output_path: Path, **kwargs) -> Path:
        """Render and write atomically; returns the written path."""
        return atomic_write_text(output_path, self.render(**kwargs))
