"""Combinatorial constructions for cube complexes built from sizeable graphs."""

__version__ = "0.1.0"
