"""Small graph constructors used by tests, scripts, and the census seed."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Sequence

from .graphs import Graph

__all__ = [
    "edgeless",
    "complete",
    "path",
    "cycle",
    "complete_multipartite",
    "octahedron",
    "random_connected",
]


def edgeless(n: int) -> Graph:
    return Graph(range(n))


def complete(n: int) -> Graph:
    return Graph(range(n), combinations(range(n), 2))


def path(n: int) -> Graph:
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_multipartite(part_sizes: Sequence[int]) -> Graph:
    """Vertices split into consecutive parts; edges join distinct parts."""
    total = sum(part_sizes)
    part_of = {}
    v = 0
    for k, size in enumerate(part_sizes):
        for _ in range(size):
            part_of[v] = k
            v += 1
    edges = [(u, w) for u, w in combinations(range(total), 2) if part_of[u] != part_of[w]]
    return Graph(range(total), edges)


def octahedron() -> Graph:
    """The 6-vertex octahedron: antipodal pairs (0,1), (2,3), (4,5)."""
    return complete_multipartite([2, 2, 2])


def random_connected(n: int, density: float, rng: random.Random, max_tries: int = 100000) -> Graph:
    """Connected Erdos-Renyi sample at the given edge probability.

    Draws repeatedly until connected, so the conditional distribution is
    uniform over connected outcomes of G(n, density).
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    pairs = list(combinations(range(n), 2))
    for _ in range(max_tries):
        edges = [e for e in pairs if rng.random() < density]
        g = Graph(range(n), edges)
        if g.is_connected():
            return g
    raise RuntimeError(f"no connected sample after {max_tries} tries (n={n}, density={density})")
