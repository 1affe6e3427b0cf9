"""Exact volumes, volume relations and Bellows checks for cycle polyhedra."""

__version__ = "0.1.0"
