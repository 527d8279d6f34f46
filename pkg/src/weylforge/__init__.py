"""Exact Weyl-module engine for map Lie algebras over polynomial rings."""

__version__ = "0.1.0"
