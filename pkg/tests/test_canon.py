"""Canonical forms must be exactly the isomorphism classes: equal for
every relabeling, distinct for non-isomorphic graphs. The reference
answer everywhere is the permutation-minimum encoding from helpers."""

from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphcollapse import (
    CanonicalForm,
    Graph,
    canonical_form,
    canonical_order,
    graph_from_canonical,
)
from graphcollapse.factories import complete, cycle, edgeless, octahedron, path

from helpers import (
    _connected_labeled_masks,
    arbitrary_graphs,
    brute_canonical_key,
    brute_is_isomorphic,
    gstar,
)


def _labeled_graph(n: int, mask: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    return Graph(range(n), [p for k, p in enumerate(pairs) if mask >> k & 1])


class TestInvariance:
    def test_every_relabeling_of_four_vertex_graphs(self):
        for g in (path(4), cycle(4), complete(4), Graph(range(4), [(0, 1), (1, 2), (1, 3)])):
            want = canonical_form(g)
            for pi in permutations(range(4)):
                h = g.relabeled(dict(enumerate(pi)))
                assert canonical_form(h) == want

    @given(arbitrary_graphs(min_n=1, max_n=8), st.randoms(use_true_random=False))
    def test_random_relabeling(self, g, rng):
        ids = list(range(20, 20 + g.n))
        rng.shuffle(ids)
        h = g.relabeled(dict(zip(g.vertices, ids)))
        assert canonical_form(h) == canonical_form(g)

    def test_sparse_ids_same_form(self):
        g = cycle(5)
        h = g.relabeled({0: 10, 1: 40, 2: 7, 3: 23, 4: 99})
        assert canonical_form(g) == canonical_form(h)


class TestSeparation:
    def test_path_vs_triangle(self):
        assert canonical_form(path(3)) != canonical_form(cycle(3))

    def test_small_standards(self):
        forms = {
            canonical_form(g)
            for g in (path(4), cycle(4), complete(4), edgeless(4), gstar(), octahedron())
        }
        assert len(forms) == 6

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_partition_matches_brute_partition(self, n):
        """On every connected labeled graph, the canonical form induces
        the same equivalence classes as minimizing over all n!
        relabelings."""
        by_form = {}
        by_brute = {}
        for mask in _connected_labeled_masks(n):
            g = _labeled_graph(n, mask)
            by_form.setdefault(canonical_form(g), set()).add(mask)
            by_brute.setdefault(brute_canonical_key(g), set()).add(mask)
        assert sorted(by_form.values(), key=min) == sorted(by_brute.values(), key=min)


class TestRealization:
    @given(arbitrary_graphs(min_n=1, max_n=7))
    def test_graph_from_canonical_is_isomorphic(self, g):
        back = graph_from_canonical(canonical_form(g))
        assert back.vertices == tuple(range(g.n))
        assert brute_is_isomorphic(g, back)

    @given(arbitrary_graphs(min_n=1, max_n=7))
    def test_idempotent(self, g):
        cf = canonical_form(g)
        assert canonical_form(graph_from_canonical(cf)) == cf

    @given(arbitrary_graphs(min_n=1, max_n=7))
    def test_canonical_order_realizes_form(self, g):
        order = canonical_order(g)
        assert sorted(order) == sorted(g.vertices)
        relabeled = g.relabeled({v: i for i, v in enumerate(order)})
        assert relabeled == graph_from_canonical(canonical_form(g))


class TestEncoding:
    @given(arbitrary_graphs(min_n=1, max_n=8))
    def test_hex_roundtrip(self, g):
        cf = canonical_form(g)
        assert CanonicalForm.from_hex(cf.hex()) == cf

    def test_bytes_layout(self):
        cf = canonical_form(edgeless(3))
        data = bytes(cf)
        assert int.from_bytes(data[:2], "big") == 3

    def test_from_hex_garbage(self):
        with pytest.raises(ValueError):
            CanonicalForm.from_hex("zz")
        with pytest.raises(ValueError):
            CanonicalForm.from_hex("00")

    def test_empty_graph_form(self):
        cf = canonical_form(Graph())
        assert graph_from_canonical(cf) == Graph()
