"""Command-line interface for Journal Status."""

import functools
import io
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.panel import Panel

from . import __version__
from .analysis.outliers import classify_outliers
from .analysis.ranking import rank_by, rank_overlap
from .analysis.statistics import pearson
from .config import (
    CliConfig,
    Config,
    DanglingPolicy,
    PageRankParams,
    SelfCitationPolicy,
    resolve_categories,
)
from .errors import ConvergenceError, DegenerateStatisticsError, InputError, JournalStatusError
from .metrics import MetricName, MetricVector, read_metric_vector
from .metrics.impact import zero_article_journals
from .metrics.suite import StatusMetrics, compute_status_metrics
from .network import CitationNetwork, induced_subnetwork
from .network.io import dump_edges, dump_journals, file_sha256, load_network
from .reports import (
    RunManifest,
    atomic_write_text,
    export_scatter,
    write_classification,
    write_manifest,
    write_rank_tables,
    write_report_bundle,
)
from .reports.summary import SUMMARY_FILE, SummaryGenerator

console = Console(stderr=True)


def configure_logging(verbose: bool = False) -> None:
    """Route library logging through rich on stderr."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def _debug_enabled() -> bool:
    ctx = click.get_current_context(silent=True)
    return bool(ctx is not None and ctx.find_root().params.get("debug"))


def handle_errors(func):
    """Map library exceptions onto the exit-code contract (1 input, 2 convergence, 3 statistics)."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValidationError as e:
            messages = "; ".join(err["msg"] for err in e.errors())
            console.print(f"[bold red]Usage error:[/bold red] {escape(messages)}")
            sys.exit(1)
        except JournalStatusError as e:
            console.print(f"[bold red]Error:[/bold red] {escape(str(e))}")
            if _debug_enabled():
                raise
            sys.exit(e.exit_code)
        except (ValueError, OSError) as e:
            console.print(f"[bold red]Error:[/bold red] {escape(str(e))}")
            if _debug_enabled():
                raise
            sys.exit(1)
    return wrapper


def pagerank_options(func):
    """Options shared by every command that computes PageRank."""
    options = [
        click.option('--lambda', 'damping', type=float,
                     help='Attenuation factor lambda in [0, 1) (default 0.85)'),
        click.option('--tolerance', type=float,
                     help='L1 convergence tolerance (default 1e-9)'),
        click.option('--max-iterations', type=int,
                     help='Power iteration cap (default 1000)'),
        click.option('--dangling-policy',
                     type=click.Choice([p.value for p in DanglingPolicy], case_sensitive=False),
                     help='Where prestige of journals citing nobody goes'),
        click.option('--allow-nonconverged', is_flag=True,
                     help='Exit 0 even if the power iteration hit its cap'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def network_options(required: bool = True):
    """Options locating and filtering the citation network."""
    def decorator(func):
        options = [
            click.option('--journals', '-j', 'journals_path',
                         type=click.Path(exists=True, dir_okay=False, path_type=Path),
                         required=required, help='journals.csv (id,title,articles,categories)'),
            click.option('--edges', '-e', 'edges_path',
                         type=click.Path(exists=True, dir_okay=False, path_type=Path),
                         required=required, help='edges.csv (citing,cited,count)'),
            click.option('--self-citations',
                         type=click.Choice([p.value for p in SelfCitationPolicy],
                                           case_sensitive=False),
                         help='Keep or drop journal self-citations'),
            click.option('--categories', help='Comma-separated category codes to keep, e.g. UB,UF'),
            click.option('--discipline',
                         help='Category preset: physics, computer-science or medicine'),
            click.option('--year', type=int, help='Citation year recorded in the outputs'),
            click.option('--output-dir', '-o', type=click.Path(file_okay=False, path_type=Path),
                         help='Directory for output files'),
        ]
        for option in reversed(options):
            func = option(func)
        return func
    return decorator


def percentile_options(func):
    options = [
        click.option('--low-pct', 'low_percentile', type=float,
                     help='PR_w percentile below which prestige is very low (default 40)'),
        click.option('--high-pct', 'high_percentile', type=float,
                     help='PR_w percentile above which prestige is very high (default 90)'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _pick(value, default):
    return default if value is None else value


def build_cli_config(subcommand: str, **options) -> CliConfig:
    """
    Merge command-line options over the environment defaults.

    Raises:
        pydantic.ValidationError: If a value is out of range
        ValueError: If the discipline preset is unknown
    """
    config = Config()
    pagerank = PageRankParams(
        damping=_pick(options.get('damping'), config.damping),
        tolerance=_pick(options.get('tolerance'), config.tolerance),
        max_iterations=_pick(options.get('max_iterations'), config.max_iterations),
        dangling_policy=DanglingPolicy(
            _pick(options.get('dangling_policy'), config.dangling_policy.value).lower()
        ),
    )
    return CliConfig(
        subcommand=subcommand,
        journals_path=options.get('journals_path'),
        edges_path=options.get('edges_path'),
        pagerank=pagerank,
        self_citation_policy=SelfCitationPolicy(
            _pick(options.get('self_citations'), config.self_citation_policy.value).lower()
        ),
        categories=resolve_categories(options.get('categories'), options.get('discipline')),
        year=_pick(options.get('year'), config.year),
        low_percentile=_pick(options.get('low_percentile'), config.low_percentile),
        high_percentile=_pick(options.get('high_percentile'), config.high_percentile),
        top_k=_pick(options.get('top_k'), config.top_k),
        output_dir=_pick(options.get('output_dir'), config.output_dir),
        log_transform=bool(options.get('log_transform')),
        allow_nonconverged=bool(options.get('allow_nonconverged')),
    )


def load_analysis_network(cfg: CliConfig) -> CitationNetwork:
    """Load the input files and apply the category filter, if any."""
    net = load_network(cfg.journals_path, cfg.edges_path, cfg.year, cfg.self_citation_policy)
    console.print(f"✓ Loaded {net.size} journals and {net.edge_count} citation links")
    if cfg.categories:
        net = induced_subnetwork(net, cfg.categories)
        console.print(
            f"  Kept {net.size} journals in categories {escape(','.join(sorted(cfg.categories)))}"
        )
    return net


def build_manifest(
    cfg: CliConfig,
    net: Optional[CitationNetwork] = None,
    metrics: Optional[StatusMetrics] = None,
    inputs: Sequence[Path] = (),
    percentiles: bool = False,
    **extra,
) -> RunManifest:
    """Collect provenance for one run."""
    paths = [p for p in (cfg.journals_path, cfg.edges_path, *inputs) if p is not None]
    manifest = RunManifest(
        command=cfg.subcommand,
        inputs={str(p): file_sha256(p) for p in paths},
        pagerank=cfg.pagerank,
        self_citation_policy=cfg.self_citation_policy,
        categories=sorted(cfg.categories),
        year=cfg.year,
        low_percentile=cfg.low_percentile if percentiles else None,
        high_percentile=cfg.high_percentile if percentiles else None,
        top_k=cfg.top_k,
        log_transform=cfg.log_transform,
        **extra,
    )
    if net is not None:
        manifest.network_fingerprint = net.fingerprint
        manifest.journal_count = net.size
        manifest.edge_count = net.edge_count
        manifest.zero_article_journals = zero_article_journals(net)
    if metrics is not None:
        manifest.convergence = {m.value: info for m, info in metrics.convergence.items()}
    return manifest


def check_convergence(cfg: CliConfig, metrics: StatusMetrics) -> None:
    """
    Raises:
        ConvergenceError: If a PageRank did not converge and that is not allowed
    """
    for metric, info in metrics.convergence.items():
        if info.converged:
            continue
        message = (
            f"{metric.value} did not converge in {info.iterations} iterations "
            f"(residual {info.final_residual:.3e})"
        )
        if not cfg.allow_nonconverged:
            raise ConvergenceError(message + "; pass --allow-nonconverged to accept it")
        console.print(f"[yellow]⚠ {escape(message)}[/yellow]")


def read_vector_file(path: Path) -> MetricVector:
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            return read_metric_vector(handle, source=str(path))
    except OSError as e:
        raise InputError(f"cannot read metric vector: {e}")


def echo_tsv(header: Iterable[str], rows: Iterable[Iterable]) -> None:
    """Print a TSV block to standard output."""
    click.echo("\t".join(header))
    for row in rows:
        click.echo("\t".join(str(cell) for cell in row))


@click.group()
@click.version_option(version=__version__)
@click.option('--verbose', '-v', is_flag=True, help='Show debug logging')
@click.option('--debug', is_flag=True, help='Show tracebacks instead of one-line errors')
def main(verbose: bool, debug: bool):
    """Journal Status - popularity and prestige of journals in citation networks."""
    configure_logging(verbose)


@main.command()
@network_options()
@pagerank_options
@click.option('--top', 'top_k', type=int, help='Rows echoed to standard output (default 10)')
@handle_errors
def rank(**options):
    """
    Rank journals by Impact Factor, Weighted PageRank and Y-factor.

    Example: journal-status rank -j journals.csv -e edges.csv --discipline physics --top 10
    """
    cfg = build_cli_config('rank', **options)
    net = load_analysis_network(cfg)
    metrics = compute_status_metrics(net, cfg.pagerank)
    manifest = build_manifest(cfg, net, metrics)
    write_manifest(cfg.output_dir, manifest)
    check_convergence(cfg, metrics)

    tables = {metric: rank_by(vector) for metric, vector in metrics.vectors().items()}
    titles = {j.id: j.title for j in net.journals}
    write_rank_tables(cfg.output_dir, tables, titles)

    for metric in (MetricName.IF, MetricName.PRW, MetricName.Y):
        click.echo(f"# {metric.value}")
        echo_tsv(
            ["rank", "id", "title", "value"],
            [(r.rank, r.id, titles[r.id], repr(r.value)) for r in tables[metric].rows[:cfg.top_k]],
        )

    shared = rank_overlap(tables[MetricName.IF], tables[MetricName.PRW], cfg.top_k)
    console.print(f"✓ {len(shared)} journal(s) in both the IF and PR_w top {cfg.top_k}")
    console.print(f"✓ Rank tables written to [cyan]{escape(str(cfg.output_dir))}[/cyan]")


def _vectors_for_analysis(
    cfg: CliConfig,
    first: Optional[Path],
    second: Optional[Path],
) -> Tuple[MetricVector, MetricVector, Optional[CitationNetwork], Optional[StatusMetrics]]:
    """IF and PR_w either from precomputed vector files or from the network."""
    if first is not None or second is not None:
        if first is None or second is None:
            raise InputError("both metric vector files are required")
        return read_vector_file(first), read_vector_file(second), None, None
    if cfg.journals_path is None or cfg.edges_path is None:
        raise InputError("give --journals and --edges, or two metric vector files")
    net = load_analysis_network(cfg)
    metrics = compute_status_metrics(net, cfg.pagerank)
    return metrics.impact, metrics.prestige, net, metrics


@main.command()
@network_options(required=False)
@pagerank_options
@percentile_options
@click.option('--if-vector', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Precomputed IF vector (metric CSV) instead of a network')
@click.option('--prw-vector', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Precomputed PR_w vector (metric CSV) instead of a network')
@click.option('--top', 'top_k', type=int, help='Journals kept per class (default 10)')
@click.option('--y-top', type=int, help='Journals labeled top_y in the scatter (default: --top)')
@handle_errors
def classify(
    if_vector: Optional[Path], prw_vector: Optional[Path], y_top: Optional[int], **options
):
    """
    Identify Popular and Prestigious journals.

    Example: journal-status classify -j journals.csv -e edges.csv --discipline physics
    """
    cfg = build_cli_config('classify', **options)
    if_vec, prw_vec, net, metrics = _vectors_for_analysis(cfg, if_vector, prw_vector)
    extra_inputs = [p for p in (if_vector, prw_vector) if p is not None]
    y_top_k = cfg.top_k if y_top is None else y_top
    write_manifest(
        cfg.output_dir,
        build_manifest(cfg, net, metrics, extra_inputs, percentiles=True, y_top_k=y_top_k),
    )
    if metrics is not None:
        check_convergence(cfg, metrics)

    report = classify_outliers(
        if_vec, prw_vec, cfg.low_percentile, cfg.high_percentile, cfg.top_k
    )
    scatter = export_scatter(if_vec, prw_vec, report, y_top_k or 0)
    write_classification(cfg.output_dir, scatter)

    rows = [
        (label, rank, e.id, repr(e.if_value), repr(e.prw_value), repr(e.if_delta))
        for label, entries in (("popular", report.popular), ("prestigious", report.prestigious))
        for rank, e in enumerate(entries, start=1)
    ]
    echo_tsv(["class", "rank", "id", "if", "prw", "if_delta"], rows)
    console.print(
        f"✓ {len(report.popular)} popular, {len(report.prestigious)} prestigious "
        f"(IF = {report.model.intercept:.4g} + {report.model.slope:.4g} x PR_w)"
    )


@main.command()
@network_options(required=False)
@pagerank_options
@click.option('--x-vector', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='First metric vector file instead of a network')
@click.option('--y-vector', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Second metric vector file instead of a network')
@click.option('--log', 'log_transform', is_flag=True,
              help='Correlate log10 values (journals with a zero value are dropped)')
@handle_errors
def correlate(x_vector: Optional[Path], y_vector: Optional[Path], **options):
    """
    Pearson correlation between IF and Weighted PageRank.

    Example: journal-status correlate -j journals.csv -e edges.csv --discipline medicine
    """
    cfg = build_cli_config('correlate', **options)
    x_vec, y_vec, net, metrics = _vectors_for_analysis(cfg, x_vector, y_vector)
    extra_inputs = [p for p in (x_vector, y_vector) if p is not None]
    write_manifest(cfg.output_dir, build_manifest(cfg, net, metrics, extra_inputs))
    if metrics is not None:
        check_convergence(cfg, metrics)

    result = pearson(x_vec, y_vec, log=cfg.log_transform)
    echo_tsv(["r", "p_value", "n"], [(repr(result.r), repr(result.p_value), result.n)])


@main.command()
@network_options()
@pagerank_options
@percentile_options
@click.option('--top', 'top_k', type=int, help='Journals kept per class and shown in the summary')
@click.option('--log', 'log_transform', is_flag=True, help='Correlate log10 values')
@click.option('--with-unweighted', is_flag=True, help='Also rank by unweighted PageRank')
@click.option('--summary', is_flag=True, help='Also render summary.md')
@handle_errors
def report(with_unweighted: bool, summary: bool, **options):
    """
    Run the whole analysis and write the report bundle.

    Example: journal-status report -j journals.csv -e edges.csv --discipline physics --summary
    """
    cfg = build_cli_config('report', **options)
    net = load_analysis_network(cfg)
    metrics = compute_status_metrics(net, cfg.pagerank, with_unweighted=with_unweighted)
    manifest = build_manifest(
        cfg, net, metrics, percentiles=True,
        y_top_k=cfg.top_k, with_unweighted=with_unweighted, summary=summary,
    )
    write_manifest(cfg.output_dir, manifest)
    check_convergence(cfg, metrics)

    tables = {metric: rank_by(vector) for metric, vector in metrics.vectors().items()}
    titles = {j.id: j.title for j in net.journals}
    classification = classify_outliers(
        metrics.impact, metrics.prestige, cfg.low_percentile, cfg.high_percentile, cfg.top_k
    )
    scatter = export_scatter(
        metrics.impact, metrics.prestige, classification, cfg.top_k or 0, metrics.combined
    )
    paths: List[Path] = write_report_bundle(cfg.output_dir, tables, scatter, manifest, titles)

    try:
        correlation = pearson(metrics.impact, metrics.prestige, log=cfg.log_transform)
        console.print(f"  IF vs PR_w: r = {correlation.r:.4f}, p = {correlation.p_value:.3g}")
    except DegenerateStatisticsError as e:
        correlation = None
        console.print(f"[yellow]⚠ {escape(str(e))}[/yellow]")

    if summary:
        paths.append(SummaryGenerator().generate(
            cfg.output_dir / SUMMARY_FILE,
            tables=tables,
            report=classification,
            correlation=correlation,
            titles=titles,
            journal_count=net.size,
            fingerprint=net.fingerprint,
            top_k=cfg.top_k or 10,
        ))

    console.print(Panel.fit(
        "[bold green]✓ Report complete[/bold green]\n\n"
        + "\n".join(f"[cyan]{escape(str(p))}[/cyan]" for p in paths),
        border_style="green",
    ))


@main.command()
@network_options()
@handle_errors
def dump(**options):
    """
    Re-serialize the input network with stable ordering.

    Writes journals.csv (by id) and edges.csv (by citing, cited) after
    applying the self-citation policy and category filter.
    """
    cfg = build_cli_config('dump', **options)
    net = load_analysis_network(cfg)
    outputs: Dict[str, Callable] = {"journals.csv": dump_journals, "edges.csv": dump_edges}
    for filename, writer in outputs.items():
        buffer = io.StringIO()
        writer(net, buffer)
        path = atomic_write_text(cfg.output_dir / filename, buffer.getvalue())
        console.print(f"✓ Wrote [cyan]{escape(str(path))}[/cyan]")


if __name__ == '__main__':
    main()
