"""Noun sense selection from sentence co-occurrence with hypernym-extended sense sets."""

__version__ = "0.1.0"
