"""Tests for configuration."""

import os
from pathlib import Path

import pytest
from pydantic import ValidationError

from journal_status.config import (
    DISCIPLINES,
    CliConfig,
    Config,
    DanglingPolicy,
    PageRankParams,
    SelfCitationPolicy,
    resolve_categories,
)


class TestConfig:
    """Tests for environment-backed defaults."""

    def test_defaults(self, monkeypatch):
        """Test the built-in defaults."""
        for name in ("LAMBDA", "TOLERANCE", "DANGLING_POLICY", "LOW_PERCENTILE", "TOP_K"):
            monkeypatch.delenv(f"JOURNAL_STATUS_{name}", raising=False)
        config = Config()

        assert config.damping == 0.85
        assert config.tolerance == 1e-9
        assert config.dangling_policy == DanglingPolicy.UNIFORM
        assert config.low_percentile == 40.0
        assert config.top_k == 10

    def test_environment_overrides(self, monkeypatch):
        """Test that JOURNAL_STATUS_* variables are honored."""
        monkeypatch.setenv("JOURNAL_STATUS_LAMBDA", "0.5")
        monkeypatch.setenv("JOURNAL_STATUS_DANGLING_POLICY", "SELF")
        monkeypatch.setenv("JOURNAL_STATUS_SELF_CITATIONS", "exclude")
        monkeypatch.setenv("JOURNAL_STATUS_OUTPUT_DIR", "/tmp/js")
        config = Config()

        assert config.damping == 0.5
        assert config.dangling_policy == DanglingPolicy.SELF
        assert config.self_citation_policy == SelfCitationPolicy.EXCLUDE
        assert config.output_dir == Path("/tmp/js")
        assert config.pagerank_params().damping == 0.5

    def test_unknown_policy_falls_back(self, monkeypatch):
        """Test that an unrecognized policy string uses the default."""
        monkeypatch.setenv("JOURNAL_STATUS_DANGLING_POLICY", "sideways")
        assert Config().dangling_policy == DanglingPolicy.UNIFORM

    def test_env_file(self, tmp_path, monkeypatch):
        """Test loading defaults from a .env file."""
        monkeypatch.delenv("JOURNAL_STATUS_MAX_ITERATIONS", raising=False)
        env_file = tmp_path / ".env"
        env_file.write_text("JOURNAL_STATUS_MAX_ITERATIONS=250\n")

        try:
            assert Config(env_file).max_iterations == 250
        finally:
            os.environ.pop("JOURNAL_STATUS_MAX_ITERATIONS", None)


class TestPageRankParams:
    """Tests for PageRank parameter validation."""

    def test_lambda_alias(self):
        """Test that damping is exposed as 'lambda'."""
        params = PageRankParams(**{"lambda": 0.9})

        assert params.damping == 0.9
        assert params.model_dump(by_alias=True)["lambda"] == 0.9

    @pytest.mark.parametrize("damping", [-0.1, 1.0, 1.5])
    def test_lambda_range(self, damping):
        """Test that lambda must lie in [0, 1)."""
        with pytest.raises(ValidationError):
            PageRankParams(damping=damping)

    def test_tolerance_positive(self):
        """Test that the tolerance must be positive."""
        with pytest.raises(ValidationError):
            PageRankParams(tolerance=0.0)

    def test_frozen(self):
        """Test that parameters are immutable."""
        params = PageRankParams()
        with pytest.raises(ValidationError):
            params.damping = 0.5


class TestCliConfig:
    """Tests for resolved run settings."""

    def test_percentile_order(self):
        """Test that low must be below high."""
        with pytest.raises(ValidationError, match="must be below"):
            CliConfig(subcommand="classify", low_percentile=95, high_percentile=40)

    def test_percentile_range(self):
        """Test that percentiles stay within [0, 100]."""
        with pytest.raises(ValidationError):
            CliConfig(subcommand="classify", high_percentile=101)

    def test_defaults(self):
        """Test percentile defaults of 40 and 90."""
        cfg = CliConfig(subcommand="classify")
        assert (cfg.low_percentile, cfg.high_percentile) == (40.0, 90.0)


class TestResolveCategories:
    """Tests for category selection."""

    def test_code_list(self):
        """Test a comma-separated list with stray spaces."""
        assert resolve_categories("UB, UF,,") == frozenset({"UB", "UF"})

    def test_discipline(self):
        """Test the physics preset."""
        assert resolve_categories(discipline="physics") == DISCIPLINES["physics"]
        assert resolve_categories(discipline="physics") == frozenset(
            {"UB", "UF", "UH", "UI", "UK", "UN", "UP", "UR"}
        )

    def test_union(self):
        """Test that codes and a preset combine."""
        assert "EP" in resolve_categories("EP", "medicine")

    def test_unknown_discipline(self):
        """Test that an unknown preset is rejected."""
        with pytest.raises(ValueError, match="Unknown discipline"):
            resolve_categories(discipline="alchemy")

    def test_nothing(self):
        """Test that no selection means no filter."""
        assert resolve_categories() == frozenset()
