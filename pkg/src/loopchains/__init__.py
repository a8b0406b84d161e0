"""Exact chain-level models of constant loops in free loop spaces of simplicial complexes."""

__version__ = "0.1.0"
