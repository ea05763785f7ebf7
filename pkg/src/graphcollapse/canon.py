"""Exact canonical forms for small graphs.

Two graphs get the same canonical form if and only if they are isomorphic.
No hashing shortcuts: the form is the lexicographically least adjacency
encoding over a pruned set of candidate orderings.

The search is the usual individualization-refinement scheme. Iterated
degree refinement splits the vertices into an ordered partition; while a
cell with more than one vertex remains, each of its vertices is
individualized in turn and the refinement repeated. Every leaf of that
tree yields a vertex ordering, and the minimum adjacency encoding over
all leaves is label-invariant. Automorphisms discovered from equal leaf
encodings prune sibling branches in the same orbit, which keeps highly
symmetric inputs (complete graphs, cycles) tractable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph

__all__ = ["CanonicalForm", "canonical_form", "canonical_order", "graph_from_canonical"]


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Canonical byte encoding: 2-byte vertex count, then packed upper
    triangle adjacency bits in canonical vertex order."""

    data: bytes

    def __post_init__(self):
        data = self.data
        if len(data) < 2:
            raise ValueError("canonical form needs at least a 2-byte vertex count")
        n = int.from_bytes(data[:2], "big")
        nbits = n * (n - 1) // 2
        want = 2 + (nbits + 7) // 8
        if len(data) != want:
            raise ValueError(
                f"canonical form for n={n} needs {want} bytes, got {len(data)}"
            )
        pad = -nbits % 8
        if pad and data[-1] & ((1 << pad) - 1):
            raise ValueError("nonzero padding bits in canonical form")

    def hex(self) -> str:
        return self.data.hex()

    @classmethod
    def from_hex(cls, s: str) -> "CanonicalForm":
        return cls(bytes.fromhex(s))

    def __bytes__(self) -> bytes:
        return self.data


def _refine(colors: dict[int, int], nbrs: dict[int, tuple[int, ...]]) -> dict[int, int]:
    """Stable iterated refinement by neighbor color multisets.

    New color indices are ranks of sorted signatures, so the result does
    not depend on vertex labels.
    """
    while True:
        sig = {
            v: (colors[v], tuple(sorted(colors[u] for u in nbrs[v])))
            for v in colors
        }
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in colors}
        if new == colors:
            return colors
        colors = new


def canonical_order(g: Graph) -> tuple[int, ...]:
    """Vertex ordering realizing the canonical form."""
    vs = g.vertices
    n = len(vs)
    if n == 0:
        return ()
    if n == 1:
        return vs
    nbrs = {v: g.neighbors(v) for v in vs}
    adj = {v: g.adjacency_mask(v) for v in vs}

    best: list = [None, None]  # [encoding, order]
    gens: list[dict[int, int]] = []

    def encode(order: list[int]) -> int:
        enc = 0
        for i in range(n):
            row = adj[order[i]]
            for j in range(i + 1, n):
                enc = (enc << 1) | (row >> order[j] & 1)
        return enc

    def cells_of(colors: dict[int, int]) -> list[list[int]]:
        by_color: dict[int, list[int]] = {}
        for v in sorted(colors):
            by_color.setdefault(colors[v], []).append(v)
        return [by_color[c] for c in sorted(by_color)]

    def in_known_orbit(w: int, tried: list[int], fixed: tuple[int, ...]) -> bool:
        if not tried:
            return False
        fixing = [p for p in gens if all(p[x] == x for x in fixed)]
        if not fixing:
            return False
        orbit = set(tried)
        grew = True
        while grew:
            grew = False
            for p in fixing:
                for x in list(orbit):
                    y = p[x]
                    if y not in orbit:
                        orbit.add(y)
                        grew = True
        return w in orbit

    def descend(colors: dict[int, int], fixed: tuple[int, ...]) -> None:
        cells = cells_of(colors)
        target = None
        for cell in cells:
            if len(cell) > 1:
                target = cell
                break
        if target is None:
            order = [cell[0] for cell in cells]
            enc = encode(order)
            if best[0] is None or enc < best[0]:
                best[0] = enc
                best[1] = order
            elif enc == best[0] and order != best[1]:
                gens.append({best[1][i]: order[i] for i in range(n)})
            return
        tried: list[int] = []
        for w in target:
            if in_known_orbit(w, tried, fixed):
                continue
            child = dict(colors)
            # Split w off just ahead of its cell, then restabilize.
            child = {v: (c, 1) for v, c in child.items()}
            child[w] = (colors[w], 0)
            ranks = {s: i for i, s in enumerate(sorted(set(child.values())))}
            child = {v: ranks[s] for v, s in child.items()}
            descend(_refine(child, nbrs), fixed + (w,))
            tried.append(w)

    start = _refine({v: 0 for v in vs}, nbrs)
    descend(start, ())
    return tuple(best[1])


def canonical_form(g: Graph) -> CanonicalForm:
    """Canonical form of g. Cached on the graph instance."""
    if g._canon is not None:
        return g._canon
    order = canonical_order(g)
    n = len(order)
    bits = []
    for i in range(n):
        mask = g.adjacency_mask(order[i]) if n else 0
        for j in range(i + 1, n):
            bits.append(mask >> order[j] & 1)
    payload = bytearray(n.to_bytes(2, "big"))
    acc = 0
    filled = 0
    for b in bits:
        acc = (acc << 1) | b
        filled += 1
        if filled == 8:
            payload.append(acc)
            acc = 0
            filled = 0
    if filled:
        payload.append(acc << (8 - filled))
    form = CanonicalForm(bytes(payload))
    g._canon = form
    return form


def graph_from_canonical(form: CanonicalForm) -> Graph:
    """Reconstruct the representative graph on vertices 0..n-1."""
    data = form.data
    n = int.from_bytes(data[:2], "big")
    bits = []
    for byte in data[2:]:
        for k in range(7, -1, -1):
            bits.append(byte >> k & 1)
    edges = []
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(range(n), edges)
