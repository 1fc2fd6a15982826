"""Configuration management for Journal Status."""

import os
from enum import Enum
from pathlib import Path
from typing import FrozenSet, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, model_validator


class DanglingPolicy(Enum):
    """What happens to the prestige held by journals that cite nobody."""
    UNIFORM = "uniform"  # spread over all N journals
    SELF = "self"        # kept by the journal, vector renormalized


class SelfCitationPolicy(Enum):
    """Whether citations from a journal to itself enter the network."""
    INCLUDE = "include"
    EXCLUDE = "exclude"


# ISI subject category codes used to carve discipline subnetworks.
DISCIPLINES = {
    "physics": frozenset({"UB", "UF", "UH", "UI", "UK", "UN", "UP", "UR"}),
    "computer-science": frozenset({"EP", "ER", "ES", "ET", "EV", "EW", "EX"}),
    "medicine": frozenset({"DS", "FF", "FY", "OI", "OP", "PY", "QA", "VY", "YU"}),
}


class PageRankParams(BaseModel):
    """Parameters of the (weighted) PageRank power iteration."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    damping: float = Field(0.85, ge=0.0, lt=1.0, alias="lambda")
    tolerance: float = Field(1e-9, gt=0.0)
    max_iterations: int = Field(1000, ge=1)
    dangling_policy: DanglingPolicy = DanglingPolicy.UNIFORM


class CliConfig(BaseModel):
    """Fully resolved settings of one CLI run."""

    model_config = ConfigDict(frozen=True)

    subcommand: str
    journals_path: Optional[Path] = None
    edges_path: Optional[Path] = None
    pagerank: PageRankParams = PageRankParams()
    self_citation_policy: SelfCitationPolicy = SelfCitationPolicy.INCLUDE
    categories: FrozenSet[str] = frozenset()
    year: int = 0
    low_percentile: float = Field(40.0, ge=0.0, le=100.0)
    high_percentile: float = Field(90.0, ge=0.0, le=100.0)
    top_k: Optional[int] = Field(10, ge=0)
    output_dir: Path = Path("./journal_status_out")
    log_transform: bool = False
    allow_nonconverged: bool = False

    @model_validator(mode="after")
    def _check_percentiles(self) -> "CliConfig":
        if self.low_percentile >= self.high_percentile:
            raise ValueError(
                f"low percentile ({self.low_percentile:g}) must be below "
                f"high percentile ({self.high_percentile:g})"
            )
        return self


class Config:
    """Application configuration."""

    def __init__(self, env_file: Optional[Path] = None):
        """
        Load configuration from environment.

        Args:
            env_file: Path to .env file (optional)
        """
        if env_file and env_file.exists():
            load_dotenv(env_file)
        else:
            load_dotenv()  # Load from default .env location

        # PageRank settings
        self.damping = float(os.getenv("JOURNAL_STATUS_LAMBDA", "0.85"))
        self.tolerance = float(os.getenv("JOURNAL_STATUS_TOLERANCE", "1e-9"))
        self.max_iterations = int(os.getenv("JOURNAL_STATUS_MAX_ITERATIONS", "1000"))
        self.dangling_policy = self._get_dangling_policy()

        # Network settings
        self.self_citation_policy = self._get_self_citation_policy()
        self.year = int(os.getenv("JOURNAL_STATUS_YEAR", "0"))

        # Analysis settings
        self.low_percentile = float(os.getenv("JOURNAL_STATUS_LOW_PERCENTILE", "40"))
        self.high_percentile = float(os.getenv("JOURNAL_STATUS_HIGH_PERCENTILE", "90"))
        self.top_k = int(os.getenv("JOURNAL_STATUS_TOP_K", "10"))

        # Output settings
        self.output_dir = Path(os.getenv("JOURNAL_STATUS_OUTPUT_DIR", "./journal_status_out"))

    def _get_dangling_policy(self) -> DanglingPolicy:
        """Get dangling policy from environment."""
        policy_str = os.getenv("JOURNAL_STATUS_DANGLING_POLICY", "uniform").lower()
        try:
            return DanglingPolicy(policy_str)
        except ValueError:
            return DanglingPolicy.UNIFORM

    def _get_self_citation_policy(self) -> SelfCitationPolicy:
        """Get self-citation policy from environment."""
        policy_str = os.getenv("JOURNAL_STATUS_SELF_CITATIONS", "include").lower()
        try:
            return SelfCitationPolicy(policy_str)
        except ValueError:
            return SelfCitationPolicy.INCLUDE

    def pagerank_params(self) -> PageRankParams:
        """
        Build PageRank parameters from the configured defaults.

        Raises:
            pydantic.ValidationError: If a value is out of range
        """
        return PageRankParams(
            damping=self.damping,
            tolerance=self.tolerance,
            max_iterations=self.max_iterations,
            dangling_policy=self.dangling_policy,
        )


def resolve_categories(
    categories: Optional[str] = None,
    discipline: Optional[str] = None,
) -> FrozenSet[str]:
    """
    Combine a comma-separated code list and a discipline preset.

    Raises:
        ValueError: If the discipline is unknown
    """
    codes = set()
    if categories:
        codes.update(code.strip() for code in categories.split(",") if code.strip())
    if discipline:
        try:
            codes.update(DISCIPLINES[discipline.lower()])
        except KeyError:
            known = ", ".join(sorted(DISCIPLINES))
            raise ValueError(f"Unknown discipline {discipline!r}; choose one of: {known}")
    return frozenset(codes)

