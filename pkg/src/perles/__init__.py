"""Perles' conjecture on facet subgraphs of simple polytopes: checks, constructions and a counterexample."""
from __future__ import annotations

__version__ = "0.1.0"
