"""Status metric vectors and convergence bookkeeping."""

import csv
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterator, Mapping, Optional, TextIO, Tuple

import numpy as np

from ..errors import InputError, MetricMismatchError


class MetricName(Enum):
    """Status metrics computed over a citation network."""
    IF = "IF"    # impact factor
    PR = "PR"    # unweighted PageRank
    PRW = "PRW"  # weighted PageRank
    Y = "Y"      # IF x PRW


@dataclass(frozen=True)
class ConvergenceInfo:
    """Outcome of a power iteration."""
    iterations: int
    final_residual: float  # L1 norm of the last update
    converged: bool


@dataclass(frozen=True, eq=False)
class MetricVector:
    """
    One metric value per journal of a network.

    ``ids`` are in ascending order and ``values`` is aligned with them.
    ``damping`` records the lambda used for PageRank-derived metrics.
    """
    metric: MetricName
    ids: Tuple[str, ...]
    values: np.ndarray
    fingerprint: str
    damping: Optional[float] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (len(self.ids),):
            raise ValueError(f"{self.metric.value}: {len(self.ids)} ids but {values.size} values")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"{self.metric.value}: non-finite metric value")
        if values.size and values.min() < 0:
            raise ValueError(f"{self.metric.value}: negative metric value")
        if list(self.ids) != sorted(self.ids):
            raise ValueError(f"{self.metric.value}: ids must be in ascending order")
        values.setflags(write=False)
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(
        cls,
        metric: MetricName,
        mapping: Mapping[str, float],
        fingerprint: str,
        damping: Optional[float] = None,
    ) -> "MetricVector":
        """Build a vector from a journal -> value mapping."""
        ids = tuple(sorted(mapping))
        return cls(metric, ids, np.array([mapping[i] for i in ids]), fingerprint, damping)

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self) -> Iterator[Tuple[str, float]]:
        return zip(self.ids, self.values.tolist())

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {journal_id: i for i, journal_id in enumerate(self.ids)}

    def __getitem__(self, journal_id: str) -> float:
        return float(self.values[self._positions[journal_id]])

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.ids, self.values.tolist()))

    def require_aligned(self, other: "MetricVector", check_fingerprint: bool = False) -> None:
        """
        Raise unless both vectors cover the same journals (and network, if asked).

        Raises:
            MetricMismatchError: On journal-set or fingerprint mismatch
        """
        if self.ids != other.ids:
            missing = sorted(set(self.ids) ^ set(other.ids))
            raise MetricMismatchError(
                f"{self.metric.value} and {other.metric.value} cover different journals "
                f"({len(missing)} differ, e.g. {', '.join(missing[:3])})"
            )
        if check_fingerprint and self.fingerprint != other.fingerprint:
            raise MetricMismatchError(
                f"{self.metric.value} ({self.fingerprint}) and {other.metric.value} "
                f"({other.fingerprint}) come from different networks"
            )

    def to_csv(self, stream: TextIO) -> None:
        """Write ``id,value`` rows under a ``# metric=... lambda=... fingerprint=...`` line."""
        damping = "n/a" if self.damping is None else repr(float(self.damping))
        stream.write(
            f"# metric={self.metric.value} lambda={damping} fingerprint={self.fingerprint}\n"
        )
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["id", "value"])
        for journal_id, value in self:
            writer.writerow([journal_id, repr(value)])


def read_metric_vector(stream: TextIO, source: Optional[str] = None) -> MetricVector:
    """
    Parse a vector written by ``MetricVector.to_csv``.

    Raises:
        InputError: On a missing or malformed header or value
    """
    first = stream.readline()
    if not first.startswith("#"):
        raise InputError("missing '# metric=...' header line", line=1, source=source)
    meta = dict(
        token.split("=", 1) for token in first[1:].split() if "=" in token
    )
    try:
        metric = MetricName(meta["metric"])
        fingerprint = meta["fingerprint"]
    except (KeyError, ValueError):
        raise InputError(f"malformed metric header {first.strip()!r}", line=1, source=source)
    damping = None if meta.get("lambda", "n/a") == "n/a" else float(meta["lambda"])

    reader = csv.reader(stream)
    mapping: Dict[str, float] = {}
    for row in reader:
        line = reader.line_num + 1
        if not row:
            continue
        if row == ["id", "value"]:
            continue
        if len(row) != 2:
            raise InputError(f"expected 2 columns, got {len(row)}", line=line, source=source)
        try:
            mapping[row[0].strip()] = float(row[1])
        except ValueError:
            raise InputError(f"non-numeric value {row[1]!r}", line=line, source=source)
    try:
        return MetricVector.from_mapping(metric, mapping, fingerprint, damping)
    except ValueError as e:
        raise InputError(str(e), source=source)
