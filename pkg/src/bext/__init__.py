"""Exact computation with finite field extensions in characteristic p."""

__version__ = "0.1.0"
