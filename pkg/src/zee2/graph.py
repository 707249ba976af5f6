"""Commutation graphs: vertices (Z2)^n, edges between anticommuting basis elements."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2core as g
from .twist import TwistSpec, beta_of

GRAPH_MAX = 12


@dataclass(frozen=True, eq=False)
class CommGraph:
    n: int
    adjacency: np.ndarray  # bool, symmetric, zero diagonal

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=bool)
        if a.shape != (1 << self.n, 1 << self.n):
            raise ValueError("adjacency shape does not match n")
        if (a != a.T).any() or a.diagonal().any():
            raise ValueError("adjacency must be symmetric without loops")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    def __eq__(self, other):
        return isinstance(other, CommGraph) and other.n == self.n and bool((other.adjacency == self.adjacency).all())

    def neighbors(self, x: int) -> list[int]:
        return [int(y) for y in np.flatnonzero(self.adjacency[x])]

    def degree(self, x: int) -> int:
        return int(self.adjacency[x].sum())

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency))
        return [(int(a), int(b)) for a, b in zip(i, j)]

    @property
    def edge_count(self) -> int:
        return int(np.triu(self.adjacency).sum())


def commutation_graph(spec) -> CommGraph:
    spec = getattr(spec, "spec", spec)  # accept an Algebra
    if not isinstance(spec, TwistSpec):
        raise TypeError("expected a TwistSpec or Algebra")
    if spec.n > GRAPH_MAX:
        raise ValueError(f"commutation graphs are limited to n <= {GRAPH_MAX}")
    return CommGraph(spec.n, beta_of(spec).table().astype(bool))


def singletons(G: CommGraph) -> list[int]:
    return [int(x) for x in np.flatnonzero(~G.adjacency.any(axis=1))]


def superpose(G1: CommGraph, G2: CommGraph) -> CommGraph:
    """Symmetric difference of the edge sets."""
    if G1.n != G2.n:
        raise ValueError("graphs have different n")
    return CommGraph(G1.n, G1.adjacency ^ G2.adjacency)


def edgeless(n: int) -> CommGraph:
    return CommGraph(n, np.zeros((1 << n, 1 << n), dtype=bool))


def to_dot(G: CommGraph, name: str = "G") -> str:
    lines = [f'graph "{name}" {{']
    for x in range(1 << G.n):
        lines.append(f'  v{x} [label="{g.to_bits(x, G.n)}"];')
    for a, b in G.edges():
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
