"""Discriminants of hypersurfaces over discrete valuation rings."""

__version__ = "0.1.0"
