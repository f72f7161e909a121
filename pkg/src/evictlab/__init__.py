"""Exact solver and strategy engine for the eviction game on small graphs."""

__version__ = "0.1.0"
