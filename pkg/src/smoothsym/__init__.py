"""Colored-fan combinatorics of symmetric varieties in exact arithmetic."""

__version__ = "0.1.0"
