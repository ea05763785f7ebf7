"""Finite simplicial complexes, clique complexes, and collapsibility.

Faces are stored as integer bitmasks over vertex ids, which makes the
free-pair test one pass of mask arithmetic: a face s is free if and only
if the union U of all faces containing s is itself a face and differs
from s, in which case (s, U) is the unique free pair at s.

Collapsibility to a point is decided by exhaustive depth-first search
over elementary collapses (the removed pair differs by one dimension),
with memoized dead states and a node budget. An Euler characteristic
gate certifies many negatives without search: elementary collapses
preserve the characteristic and a point has characteristic 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .contract import ReductionTrace, VERTEX_STEP, is_strong_contractible
from .errors import BudgetExceededError, InternalInconsistencyError
from .graphs import Graph

__all__ = [
    "Simplex",
    "FreePair",
    "SimplicialComplex",
    "clique_complex",
    "enumerate_cliques",
    "CollapseVerdict",
    "is_collapsible",
    "collapse_via_trace",
    "DEFAULT_FACE_BUDGET",
    "DEFAULT_COLLAPSE_BUDGET",
]

Simplex = tuple  # sorted tuple of vertex ids

DEFAULT_FACE_BUDGET = 1 << 22
DEFAULT_COLLAPSE_BUDGET = 1_000_000


def _mask_of(simplex: Iterable[int]) -> int:
    mask = 0
    for v in simplex:
        mask |= 1 << v
    return mask


def _tuple_of(mask: int) -> Simplex:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class FreePair:
    """A free pair (sigma, tau): tau is the only maximal face containing
    sigma, and sigma is a proper subset of tau."""

    sigma: Simplex
    tau: Simplex

    @property
    def is_elementary(self) -> bool:
        return len(self.tau) == len(self.sigma) + 1


class SimplicialComplex:
    """Immutable simplicial complex with the full face set stored.

    Faces are nonempty simplices; the face set is closed under taking
    nonempty subsets.
    """

    __slots__ = ("_masks", "_faces", "_maximal", "_hash")

    def __init__(self, faces: Iterable[Iterable[int]], _validate: bool = True):
        masks = frozenset(_mask_of(f) for f in faces)
        if 0 in masks:
            raise ValueError("the empty simplex is not a face")
        if _validate:
            for m in masks:
                bits = m
                while bits:
                    low = bits & -bits
                    if m != low and (m & ~low) not in masks:
                        raise ValueError(
                            f"face set is not downward closed: {_tuple_of(m)} present, "
                            f"{_tuple_of(m & ~low)} missing"
                        )
                    bits &= bits - 1
        self._masks = masks
        self._faces = None
        self._maximal = None
        self._hash = None

    @classmethod
    def from_maximal(cls, maximal: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Downward closure of the given faces."""
        masks = set()
        stack = [_mask_of(f) for f in maximal]
        for m in stack:
            if m == 0:
                raise ValueError("the empty simplex is not a face")
        while stack:
            m = stack.pop()
            if m in masks or m == 0:
                continue
            masks.add(m)
            bits = m
            while bits:
                low = bits & -bits
                sub = m & ~low
                if sub and sub not in masks:
                    stack.append(sub)
                bits &= bits - 1
        return cls._from_masks(frozenset(masks))

    @classmethod
    def _from_masks(cls, masks: frozenset) -> "SimplicialComplex":
        obj = cls.__new__(cls)
        obj._masks = masks
        obj._faces = None
        obj._maximal = None
        obj._hash = None
        return obj

    # -- accessors ---------------------------------------------------------

    @property
    def faces(self) -> tuple[Simplex, ...]:
        """All faces sorted by (dimension, lexicographic)."""
        if self._faces is None:
            self._faces = tuple(sorted((_tuple_of(m) for m in self._masks), key=lambda t: (len(t), t)))
        return self._faces

    @property
    def face_count(self) -> int:
        return len(self._masks)

    @property
    def dim(self) -> int:
        if not self._masks:
            return -1
        return max(_popcount(m) for m in self._masks) - 1

    @property
    def vertices(self) -> tuple[int, ...]:
        union = 0
        for m in self._masks:
            union |= m
        return _tuple_of(union)

    @property
    def maximal_faces(self) -> tuple[Simplex, ...]:
        if self._maximal is None:
            masks = self._masks
            maximal = [m for m in masks if not any(m != o and m & o == m for o in masks)]
            self._maximal = tuple(sorted((_tuple_of(m) for m in maximal), key=lambda t: (len(t), t)))
        return self._maximal

    def euler_characteristic(self) -> int:
        chi = 0
        for m in self._masks:
            chi += 1 if (_popcount(m) - 1) % 2 == 0 else -1
        return chi

    def has_face(self, simplex: Iterable[int]) -> bool:
        return _mask_of(simplex) in self._masks

    def one_skeleton(self) -> Graph:
        vertices = [m.bit_length() - 1 for m in self._masks if _popcount(m) == 1]
        edges = [_tuple_of(m) for m in self._masks if _popcount(m) == 2]
        return Graph(vertices, edges)

    # -- free pairs and collapses -------------------------------------------

    def _free_tau_mask(self, sigma_mask: int) -> Optional[int]:
        """Union of faces containing sigma; a free pair exists iff the
        union is a face other than sigma itself."""
        union = 0
        for m in self._masks:
            if m & sigma_mask == sigma_mask:
                union |= m
        if union != sigma_mask and union in self._masks:
            return union
        return None

    def free_pairs(self) -> list[FreePair]:
        """All free pairs, non-elementary ones included, ordered
        lexicographically by tau then sigma."""
        pairs = []
        for sm in self._masks:
            tm = self._free_tau_mask(sm)
            if tm is not None:
                pairs.append(FreePair(_tuple_of(sm), _tuple_of(tm)))
        pairs.sort(key=lambda p: (p.tau, p.sigma))
        return pairs

    def collapse(self, pair: FreePair) -> "SimplicialComplex":
        """Remove every face between sigma and tau inclusive.

        Raises ValueError unless (sigma, tau) is a free pair of this
        complex. The removal count is 2 ** (dim tau - dim sigma).
        """
        sm = _mask_of(pair.sigma)
        tm = _mask_of(pair.tau)
        if sm not in self._masks:
            raise ValueError(f"{pair.sigma} is not a face")
        if tm not in self._masks:
            raise ValueError(f"{pair.tau} is not a face")
        if self._free_tau_mask(sm) != tm:
            raise ValueError(f"({pair.sigma}, {pair.tau}) is not a free pair")
        return self._collapse_masks(sm, tm)

    def _collapse_masks(self, sm: int, tm: int) -> "SimplicialComplex":
        removed = frozenset(m for m in self._masks if m & sm == sm and tm & m == m)
        return SimplicialComplex._from_masks(self._masks - removed)

    def to_text(self) -> str:
        """One maximal face per line, ids sorted ascending."""
        return "\n".join(" ".join(str(v) for v in f) for f in self.maximal_faces) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SimplicialComplex":
        maximal = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            maximal.append(tuple(int(t) for t in line.split()))
        return cls.from_maximal(maximal)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._masks == other._masks

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._masks)
        return self._hash

    def __repr__(self) -> str:
        return f"SimplicialComplex(faces={self.face_count}, dim={self.dim})"


def enumerate_cliques(g: Graph, max_size: Optional[int] = None, max_faces: int = DEFAULT_FACE_BUDGET) -> dict[int, list[Simplex]]:
    """Cliques of g grouped by size, each list in lexicographic order.

    Expands cliques by their common neighbors above the largest member,
    so every clique is produced exactly once.
    """
    out: dict[int, list[Simplex]] = {}
    if g.n == 0 or (max_size is not None and max_size < 1):
        return out
    total = g.n
    if max_faces is not None and total > max_faces:
        raise BudgetExceededError(f"face budget {max_faces} exceeded at {total} faces")
    level = []
    out[1] = [(v,) for v in g.vertices]
    for v in g.vertices:
        cand = g.adjacency_mask(v) >> (v + 1) << (v + 1)
        level.append(((v,), cand))
    size = 1
    while level and (max_size is None or size < max_size):
        size += 1
        nxt = []
        bucket = []
        for clique, cand in level:
            bits = cand
            while bits:
                low = bits & -bits
                u = low.bit_length() - 1
                bits &= bits - 1
                bigger = clique + (u,)
                bucket.append(bigger)
                nxt.append((bigger, cand & g.adjacency_mask(u) >> (u + 1) << (u + 1)))
        if bucket:
            total += len(bucket)
            if max_faces is not None and total > max_faces:
                raise BudgetExceededError(f"face budget {max_faces} exceeded at {total} faces")
            out[size] = bucket
        level = nxt
    return out


def clique_complex(g: Graph, max_faces: int = DEFAULT_FACE_BUDGET) -> SimplicialComplex:
    """Complex whose faces are exactly the nonempty cliques of g."""
    by_size = enumerate_cliques(g, max_faces=max_faces)
    masks = frozenset(_mask_of(c) for bucket in by_size.values() for c in bucket)
    return SimplicialComplex._from_masks(masks)


# -- collapsibility ------------------------------------------------------------

COLLAPSIBLE = "collapsible"
NOT_COLLAPSIBLE = "not_collapsible"
EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class CollapseVerdict:
    status: str
    witness: Optional[tuple[FreePair, ...]]
    nodes_expanded: int

    @property
    def collapsible(self) -> Optional[bool]:
        """True / False / None for collapsible / not / budget ran out."""
        if self.status == COLLAPSIBLE:
            return True
        if self.status == NOT_COLLAPSIBLE:
            return False
        return None


def _elementary_candidates(cx: SimplicialComplex) -> list[tuple[int, int, Simplex, Simplex]]:
    cands = []
    for sm in cx._masks:
        tm = cx._free_tau_mask(sm)
        if tm is not None and _popcount(tm) == _popcount(sm) + 1:
            cands.append((sm, tm, _tuple_of(sm), _tuple_of(tm)))
    # Highest-dimensional tau first, then lexicographic.
    cands.sort(key=lambda c: (-len(c[3]), c[3], c[2]))
    return cands


def is_collapsible(cx: SimplicialComplex, budget: int = DEFAULT_COLLAPSE_BUDGET) -> CollapseVerdict:
    """Decide collapsibility to a point by elementary collapses.

    Returns collapsible with a witness sequence, not_collapsible when the
    whole search space was exhausted, or exhausted when the node budget
    ran out first. States already proven dead are memoized.
    """
    if cx.face_count == 0:
        raise ValueError("collapsibility is undefined for the empty complex")
    if cx.euler_characteristic() != 1:
        # Collapses preserve the characteristic; a point has 1. No
        # sequence exists, which is exactly what an exhausted search
        # would conclude.
        return CollapseVerdict(NOT_COLLAPSIBLE, None, 0)
    dead: set = set()
    nodes = 0
    witness: list[FreePair] = []

    def search(cur: SimplicialComplex) -> str:
        nonlocal nodes
        if cur.face_count == 1 and cur.dim == 0:
            return COLLAPSIBLE
        if cur._masks in dead:
            return NOT_COLLAPSIBLE
        nodes += 1
        if nodes > budget:
            return EXHAUSTED
        for sm, tm, sigma, tau in _elementary_candidates(cur):
            witness.append(FreePair(sigma, tau))
            status = search(cur._collapse_masks(sm, tm))
            if status == COLLAPSIBLE:
                return COLLAPSIBLE
            witness.pop()
            if status == EXHAUSTED:
                return EXHAUSTED
        dead.add(cur._masks)
        return NOT_COLLAPSIBLE

    status = search(cx)
    if status == COLLAPSIBLE:
        return CollapseVerdict(COLLAPSIBLE, tuple(witness), nodes)
    return CollapseVerdict(status, None, nodes)


# -- trace-guided collapse -------------------------------------------------------


def _point_witness(g: Graph) -> tuple[list[tuple[Simplex, Simplex]], int]:
    """Collapse witness for the clique complex of a strongly contractible
    graph, built from the deletion recursion itself.

    Deleting a vertex a with contractible neighborhood corresponds to
    collapsing the cone a * link(a): each elementary pair of the link
    collapse lifts to the cone by joining a, after which (a, {a, w})
    removes what is left of the cone, where w is the final link vertex.
    """
    if g.n == 1:
        return [], g.vertices[0]
    for v in g.vertices:
        nb = g.neighborhood(v)
        if is_strong_contractible(nb):
            link_pairs, w = _point_witness(nb)
            pairs = [
                (tuple(sorted((v,) + s)), tuple(sorted((v,) + t)))
                for s, t in link_pairs
            ]
            pairs.append(((v,), tuple(sorted((v, w)))))
            rest, last = _point_witness(g.delete_vertex(v))
            return pairs + rest, last
    raise InternalInconsistencyError("graph claimed contractible has no deletable vertex")


def collapse_via_trace(g: Graph, trace: ReductionTrace) -> tuple[FreePair, ...]:
    """Elementary collapse sequence taking the clique complex of g to the
    clique complex of the reduced graph, lifted step by step from the
    reduction trace.

    Works for vertex and edge deletions alike: the deleted element plays
    the role of the cone apex over its (common) neighborhood.
    """
    pairs: list[FreePair] = []
    cur = g
    for step in trace:
        if step.kind == VERTEX_STEP:
            apex = (step.element,)
            link = cur.neighborhood(step.element)
        else:
            u, v = step.element
            apex = (min(u, v), max(u, v))
            link = cur.common_neighborhood(u, v)
        if frozenset(link.vertices) != step.link:
            raise ValueError(
                f"trace does not match graph: link of {apex} is {sorted(link.vertices)}, "
                f"recorded {sorted(step.link)}"
            )
        if not is_strong_contractible(link):
            raise ValueError(f"link of {apex} is not strongly contractible; trace is invalid")
        link_pairs, w = _point_witness(link)
        for s, t in link_pairs:
            pairs.append(
                FreePair(tuple(sorted(apex + s)), tuple(sorted(apex + t)))
            )
        pairs.append(FreePair(apex, tuple(sorted(apex + (w,)))))
        if step.kind == VERTEX_STEP:
            cur = cur.delete_vertex(step.element)
        else:
            cur = cur.delete_edge(*step.element)
    return tuple(pairs)
