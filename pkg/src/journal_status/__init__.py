"""Journal Status - popularity and prestige metrics for journal citation networks."""

__version__ = "0.1.0"
