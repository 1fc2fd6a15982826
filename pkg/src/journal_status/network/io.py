"""CSV ingestion and stable re-serialization of journal citation networks."""

import csv
import hashlib
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Tuple

from ..config import SelfCitationPolicy
from ..errors import InputError
from . import CitationNetwork, EdgeTriple, Journal, build_network

JOURNAL_HEADER = ["id", "title", "articles", "categories"]
EDGE_HEADER = ["citing", "cited", "count"]
CATEGORY_SEPARATOR = "|"


def _parse_count(text: str) -> Optional[int]:
    """Plain base-10 integer with an optional minus sign, else None."""
    digits = text[1:] if text.startswith("-") else text
    if not (digits.isascii() and digits.isdigit()):
        return None
    return int(text)


def _rows(stream: TextIO, header: List[str], source: Optional[str]):
    """Yield (line number, stripped fields) for each data row after checking the header."""
    reader = csv.reader(stream)
    header_seen = False
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        fields = [cell.strip() for cell in row]
        if not header_seen:
            fields[0] = fields[0].lstrip("\ufeff")
            if fields != header:
                raise InputError(
                    f"expected header {','.join(header)!r}, got {','.join(fields)!r}",
                    line=reader.line_num, source=source,
                )
            header_seen = True
            continue
        if len(fields) != len(header):
            raise InputError(
                f"expected {len(header)} columns, got {len(fields)}",
                line=reader.line_num, source=source,
            )
        yield reader.line_num, fields
    if not header_seen:
        raise InputError(f"missing header {','.join(header)!r}", source=source)


def parse_journals(stream: TextIO, source: Optional[str] = None) -> List[Journal]:
    """
    Parse a ``id,title,articles,categories`` CSV stream.

    Args:
        stream: Text stream positioned at the header line
        source: Name used in error messages (usually the file path)

    Returns:
        One Journal per data row, in file order

    Raises:
        InputError: On malformed rows, bad article counts or duplicate ids
    """
    journals: List[Journal] = []
    seen: Dict[str, int] = {}
    for line, (journal_id, title, articles, categories) in _rows(stream, JOURNAL_HEADER, source):
        if not journal_id:
            raise InputError("empty journal id", line=line, source=source)
        article_count = _parse_count(articles)
        if article_count is None:
            raise InputError(f"non-integer article count {articles!r}", line=line, source=source)
        if article_count < 0:
            raise InputError(f"negative article count {article_count}", line=line, source=source)
        if journal_id in seen:
            raise InputError(
                f"duplicate journal id {journal_id!r} (first seen at line {seen[journal_id]})",
                line=line, source=source,
            )
        seen[journal_id] = line
        codes = frozenset(
            code.strip() for code in categories.split(CATEGORY_SEPARATOR) if code.strip()
        )
        journals.append(Journal(journal_id, title, article_count, codes))
    return journals


def parse_edges(stream: TextIO, source: Optional[str] = None) -> List[EdgeTriple]:
    """
    Parse a ``citing,cited,count`` CSV stream.

    Duplicate (citing, cited) rows are summed; the result keeps the order
    in which each pair first appeared.

    Raises:
        InputError: On malformed rows or non-positive counts
    """
    totals: Dict[Tuple[str, str], int] = {}
    for line, (citing, cited, count) in _rows(stream, EDGE_HEADER, source):
        if not citing or not cited:
            raise InputError("empty journal id in edge", line=line, source=source)
        value = _parse_count(count)
        if value is None:
            raise InputError(f"non-integer citation count {count!r}", line=line, source=source)
        if value <= 0:
            raise InputError(f"non-positive citation count at line {line}", source=source)
        totals[(citing, cited)] = totals.get((citing, cited), 0) + value
    return [(citing, cited, value) for (citing, cited), value in totals.items()]


def dump_journals(net: CitationNetwork, stream: TextIO) -> None:
    """Write journals in ascending id order, categories sorted and ``|``-joined."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(JOURNAL_HEADER)
    for journal in net.journals:
        writer.writerow([
            journal.id,
            journal.title,
            journal.article_count,
            CATEGORY_SEPARATOR.join(sorted(journal.categories)),
        ])


def dump_edges(net: CitationNetwork, stream: TextIO) -> None:
    """Write edges in ascending (citing, cited) order."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(EDGE_HEADER)
    for citing, cited, count in net.iter_edges():
        writer.writerow([citing, cited, count])


def load_network(
    journals_path: Path,
    edges_path: Path,
    year: int = 0,
    policy: SelfCitationPolicy = SelfCitationPolicy.INCLUDE,
) -> CitationNetwork:
    """
    Read both CSV files and build the network.

    Raises:
        InputError: On any parse or consistency error, naming the file
    """
    try:
        with open(journals_path, encoding="utf-8-sig", newline="") as handle:
            journals = parse_journals(handle, source=str(journals_path))
        with open(edges_path, encoding="utf-8-sig", newline="") as handle:
            edges = parse_edges(handle, source=str(edges_path))
    except OSError as e:
        raise InputError(f"cannot read input: {e}")
    except UnicodeDecodeError as e:
        raise InputError(f"input is not valid UTF-8: {e}")
    return build_network(journals, edges, year=year, policy=policy)


def file_sha256(path: Path) -> str:
    """Hex SHA-256 of a file, for run manifests."""
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()
