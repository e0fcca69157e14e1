"""snarklab: constructions and exact verification for cubic semi-graphs.

The package builds a parametric family of snarks from Petersen-derived
gadgets and checks their coloring, flow, and connectivity properties with
exhaustive solvers.  Everything is deterministic; randomized helpers take
explicit seeds.
"""
from __future__ import annotations

from .semigraph import Link, SemiGraph, SemiGraphError, from_data

__version__ = "0.1.0"

__all__ = [
    "Link",
    "SemiGraph",
    "SemiGraphError",
    "from_data",
    "__version__",
]
