"""Hierarchical quandles, colourings of coloured link diagrams, and cocycle invariants."""

__version__ = "0.1.0"
