"""Correlation sets of prepare-and-measure scenarios with bounded-energy sources."""

__version__ = "0.1.0"
