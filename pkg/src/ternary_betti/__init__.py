"""Exact homology of independence complexes and checks on ternary graphs."""

from ternary_betti.graph import Graph, family, induced_subgraph, residual
from ternary_betti.independence import f_euler, f_restricted, independent_sets
from ternary_betti.simplicial import (
    BettiVector,
    betti_numbers,
    independence_complex,
    integral_homology,
    reduced_betti,
)
from ternary_betti.ternary import induced_cycles, is_ternary

__version__ = "0.1.0"

__all__ = [
    "BettiVector",
    "Graph",
    "betti_numbers",
    "f_euler",
    "f_restricted",
    "family",
    "independence_complex",
    "independent_sets",
    "induced_cycles",
    "induced_subgraph",
    "integral_homology",
    "is_ternary",
    "reduced_betti",
    "residual",
]
