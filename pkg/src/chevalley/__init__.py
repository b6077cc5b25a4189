"""Exact computations with classical matrix groups."""

__version__ = "0.1.0"
