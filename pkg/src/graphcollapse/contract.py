"""Recursive graph contractibility tests and reduction sequences.

A graph is *strongly contractible* when it can be shrunk to a single
vertex by repeatedly deleting a vertex whose open neighborhood is itself
strongly contractible. The membership test scans vertices in ascending id
order and commits to the first vertex whose neighborhood passes, then
recurses on the remaining graph; it never backtracks over that choice.
An exhaustive any-order variant is provided separately so negative
answers can be certified independently of the greedy scan order.

The reduction routine applies the same test destructively: it deletes the
first qualifying vertex, restarts the scan, and stops when a full pass
deletes nothing. The edge-extended variant additionally deletes an edge
whose common neighborhood passes the test whenever no vertex qualifies.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterator, Optional

from .canon import canonical_form
from .errors import GraphFormatError
from .graphs import Graph

__all__ = [
    "Step",
    "ReductionTrace",
    "TransformKind",
    "ContractibilityCache",
    "is_strong_contractible",
    "is_strong_contractible_any_order",
    "contractible_reduction",
    "edge_extended_reduction",
    "legal_transformations",
    "clear_caches",
]

DEFAULT_CACHE_ENTRIES = 1 << 20


class ContractibilityCache:
    """Bounded FIFO map from canonical form bytes to a boolean verdict.

    Reads are lock-free; writes take a lock so the cache can be shared by
    census worker threads.
    """

    def __init__(self, max_entries: int = DEFAULT_CACHE_ENTRIES):
        self.max_entries = max_entries
        self._data: dict[bytes, bool] = {}
        self._lock = threading.Lock()

    def get(self, key: bytes) -> Optional[bool]:
        return self._data.get(key)

    def put(self, key: bytes, value: bool) -> None:
        with self._lock:
            if key not in self._data and len(self._data) >= self.max_entries:
                self._data.pop(next(iter(self._data)))
            self._data[key] = value

    def __len__(self) -> int:
        return len(self._data)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


_GREEDY_CACHE = ContractibilityCache()
_ANY_ORDER_CACHE = ContractibilityCache()


def clear_caches() -> None:
    _GREEDY_CACHE.clear()
    _ANY_ORDER_CACHE.clear()


def is_strong_contractible(g: Graph, cache: Optional[ContractibilityCache] = _GREEDY_CACHE) -> bool:
    """Greedy first-hit membership test.

    Empty graph: no. Single vertex: yes. Otherwise scan vertices in
    ascending id order; at the first vertex whose neighborhood passes
    recursively, the answer is the recursive answer for the graph minus
    that vertex. Pass cache=None to disable memoization.
    """
    n = g.n
    if n == 0:
        return False
    if n == 1:
        return True
    key = None
    if cache is not None:
        key = canonical_form(g).data
        hit = cache.get(key)
        if hit is not None:
            return hit
    result = False
    for v in g.vertices:
        if is_strong_contractible(g.neighborhood(v), cache):
            result = is_strong_contractible(g.delete_vertex(v), cache)
            break
    if cache is not None:
        cache.put(key, result)
    return result


def is_strong_contractible_any_order(
    g: Graph, cache: Optional[ContractibilityCache] = _ANY_ORDER_CACHE
) -> bool:
    """Backtracking variant: true when *some* deletion order reaches K(1).

    Used by the census harness to certify that a greedy rejection was not
    an artifact of the fixed scan order.
    """
    n = g.n
    if n == 0:
        return False
    if n == 1:
        return True
    key = None
    if cache is not None:
        key = canonical_form(g).data
        hit = cache.get(key)
        if hit is not None:
            return hit
    result = False
    for v in g.vertices:
        if is_strong_contractible_any_order(g.neighborhood(v), cache) and is_strong_contractible_any_order(
            g.delete_vertex(v), cache
        ):
            result = True
            break
    if cache is not None:
        cache.put(key, result)
    return result


# -- reduction traces ----------------------------------------------------------

VERTEX_STEP = "vertex"
EDGE_STEP = "edge"


@dataclass(frozen=True)
class Step:
    """One deletion: a vertex id or an edge pair, plus a snapshot of the
    deleted element's (common) neighborhood vertex set at deletion time."""

    kind: str
    element: object  # int for vertex steps, (u, v) tuple for edge steps
    link: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in (VERTEX_STEP, EDGE_STEP):
            raise ValueError(f"unknown step kind {self.kind!r}")


@dataclass(frozen=True)
class ReductionTrace:
    """Ordered deletion sequence recorded by a reduction."""

    steps: tuple[Step, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    @property
    def deleted_vertices(self) -> tuple[int, ...]:
        return tuple(s.element for s in self.steps if s.kind == VERTEX_STEP)

    @property
    def deleted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(s.element for s in self.steps if s.kind == EDGE_STEP)

    def replay(self, g: Graph) -> Graph:
        """Apply the deletions to g, validating each step.

        Checks that each deleted element exists and that the recorded
        neighborhood snapshot matches the graph at that point.
        """
        for i, step in enumerate(self.steps):
            if step.kind == VERTEX_STEP:
                v = step.element
                if not g.has_vertex(v):
                    raise ValueError(f"trace step {i}: vertex {v} is not in the graph")
                live = frozenset(g.neighborhood(v).vertices)
                if live != step.link:
                    raise ValueError(
                        f"trace step {i}: neighborhood of {v} is {sorted(live)}, trace recorded {sorted(step.link)}"
                    )
                g = g.delete_vertex(v)
            else:
                u, v = step.element
                if not g.has_edge(u, v):
                    raise ValueError(f"trace step {i}: edge {{{u},{v}}} is not in the graph")
                live = frozenset(g.common_neighborhood(u, v).vertices)
                if live != step.link:
                    raise ValueError(
                        f"trace step {i}: common neighborhood of {{{u},{v}}} is {sorted(live)}, "
                        f"trace recorded {sorted(step.link)}"
                    )
                g = g.delete_edge(u, v)
        return g

    def to_text(self) -> str:
        lines = [f"trace {len(self.steps)}"]
        for step in self.steps:
            if step.kind == VERTEX_STEP:
                lines.append(f"V {step.element}")
            else:
                u, v = step.element
                lines.append(f"E {u} {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, g: Optional[Graph] = None, source: str = "<trace>") -> "ReductionTrace":
        """Parse the trace format. If g is given, deletions are replayed
        against it so links are filled in and validated."""
        lines = [
            (i, ln.strip())
            for i, ln in enumerate(text.splitlines(), start=1)
            if ln.strip() and not ln.strip().startswith("#")
        ]
        if not lines:
            raise GraphFormatError(source, 1, "empty trace, expected 'trace k' header")
        lineno, header = lines[0]
        parts = header.split()
        if len(parts) != 2 or parts[0] != "trace":
            raise GraphFormatError(source, lineno, f"expected 'trace k' header, got {header!r}")
        try:
            k = int(parts[1])
        except ValueError:
            raise GraphFormatError(source, lineno, f"expected integer count, got {parts[1]!r}") from None
        body = lines[1:]
        if len(body) != k:
            raise GraphFormatError(source, lineno, f"header promises {k} steps, found {len(body)}")
        raw: list[tuple[str, object]] = []
        for lineno, line in body:
            parts = line.split()
            if parts[0] == "V" and len(parts) == 2:
                raw.append((VERTEX_STEP, int(parts[1])))
            elif parts[0] == "E" and len(parts) == 3:
                u, v = int(parts[1]), int(parts[2])
                raw.append((EDGE_STEP, (min(u, v), max(u, v))))
            else:
                raise GraphFormatError(source, lineno, f"expected 'V v' or 'E u v', got {line!r}")
        steps = []
        if g is None:
            steps = [Step(kind, elem) for kind, elem in raw]
        else:
            cur = g
            for kind, elem in raw:
                if kind == VERTEX_STEP:
                    link = frozenset(cur.neighborhood(elem).vertices)
                    cur = cur.delete_vertex(elem)
                else:
                    u, v = elem
                    link = frozenset(cur.common_neighborhood(u, v).vertices)
                    cur = cur.delete_edge(u, v)
                steps.append(Step(kind, elem, link))
        return cls(tuple(steps))


# -- reductions ------------------------------------------------------------------


def _delete_one_vertex(g: Graph) -> Optional[tuple[Graph, Step]]:
    for v in g.vertices:
        nb = g.neighborhood(v)
        if is_strong_contractible(nb):
            step = Step(VERTEX_STEP, v, frozenset(nb.vertices))
            return g.delete_vertex(v), step
    return None


def contractible_reduction(g: Graph) -> tuple[Graph, ReductionTrace]:
    """Delete qualifying vertices until none remains.

    Each pass scans ascending vertex ids, deletes the first vertex whose
    neighborhood is strongly contractible, and restarts. Deterministic.
    """
    steps = []
    while True:
        hit = _delete_one_vertex(g)
        if hit is None:
            break
        g, step = hit
        steps.append(step)
    return g, ReductionTrace(tuple(steps))


def edge_extended_reduction(g: Graph) -> tuple[Graph, ReductionTrace]:
    """Vertex reduction, falling back to edge deletions when stuck.

    When no vertex qualifies, edges are tried in ascending lexicographic
    order; the first edge whose common neighborhood is strongly
    contractible is deleted, after which vertex deletions are retried.
    """
    steps = []
    while True:
        hit = _delete_one_vertex(g)
        if hit is not None:
            g, step = hit
            steps.append(step)
            continue
        for u, v in g.edges:
            cn = g.common_neighborhood(u, v)
            if is_strong_contractible(cn):
                steps.append(Step(EDGE_STEP, (u, v), frozenset(cn.vertices)))
                g = g.delete_edge(u, v)
                break
        else:
            break
    return g, ReductionTrace(tuple(steps))


# -- legal transformation listing -------------------------------------------------


class TransformKind(Enum):
    DELETE_VERTEX = "delete_vertex"
    GLUE_VERTEX = "glue_vertex"
    DELETE_EDGE = "delete_edge"
    GLUE_EDGE = "glue_edge"


def legal_transformations(
    g: Graph, max_glue_size: int = 3
) -> list[tuple[TransformKind, object]]:
    """Transformations whose side condition passes the strong test.

    The side conditions of the general contractible-transformation family
    are approximated by the strong test throughout. Candidate neighbor
    sets for vertex gluing are only enumerated up to max_glue_size
    vertices; larger gluings exist but are not listed.
    """
    out: list[tuple[TransformKind, object]] = []
    for v in g.vertices:
        if is_strong_contractible(g.neighborhood(v)):
            out.append((TransformKind.DELETE_VERTEX, v))
    limit = min(max_glue_size, g.n)
    for size in range(1, limit + 1):
        for subset in combinations(g.vertices, size):
            if is_strong_contractible(g.induced(subset)):
                out.append((TransformKind.GLUE_VERTEX, frozenset(subset)))
    for u, v in g.edges:
        if is_strong_contractible(g.common_neighborhood(u, v)):
            out.append((TransformKind.DELETE_EDGE, (u, v)))
    edge_set = set(g.edges)
    for u, v in combinations(g.vertices, 2):
        if (u, v) in edge_set:
            continue
        if is_strong_contractible(g.common_neighborhood(u, v)):
            out.append((TransformKind.GLUE_EDGE, (u, v)))
    return out
