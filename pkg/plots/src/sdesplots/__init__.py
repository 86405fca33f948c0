"""Rendering for the experiment CSVs: landscape charts and summary tables."""

__version__ = "0.1.0"
