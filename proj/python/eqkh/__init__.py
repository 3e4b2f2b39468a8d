"""Equivariant homology of symmetric links and graphs."""

from ._eqkh import (
    CapError,
    EvenOrderError,
    ParseError,
    StructureError,
    annular,
    annular_equivariant,
    cli,
    graph,
    graph_equivariant,
    kh,
    kheq,
)

__all__ = [
    "CapError",
    "EvenOrderError",
    "ParseError",
    "StructureError",
    "annular",
    "annular_equivariant",
    "cli",
    "graph",
    "graph_equivariant",
    "kh",
    "kheq",
]
