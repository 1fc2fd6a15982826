"""Exception hierarchy shared by the library and the CLI."""

from typing import Optional


class JournalStatusError(Exception):
    """Base class for all Journal Status errors."""

    exit_code = 1


class InputError(JournalStatusError, ValueError):
    """Malformed input file, unknown journal id or empty selection."""

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        self.line = line
        self.source = source
        prefix = ""
        if source:
            prefix += f"{source}: "
        if line is not None:
            prefix += f"line {line}: "
        super().__init__(prefix + message)


class MetricMismatchError(JournalStatusError, ValueError):
    """Two metric vectors do not describe the same journals."""


class NetworkTooLargeError(JournalStatusError, ValueError):
    """Network exceeds the size bound of the dense solver."""


class DegenerateStatisticsError(JournalStatusError, ValueError):
    """Statistic undefined for the given sample (constant vector, n too small)."""

    exit_code = 3


class ConvergenceError(JournalStatusError):
    """Power iteration stopped at the iteration cap."""

    exit_code = 2


class ReportWriteError(JournalStatusError, OSError):
    """Output file or directory could not be written."""
