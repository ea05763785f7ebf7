import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcollapse import (
    Graph,
    ReductionTrace,
    clear_caches,
    contractible_reduction,
    edge_extended_reduction,
    is_strong_contractible,
    is_strong_contractible_any_order,
    legal_transformations,
)
from graphcollapse.contract import ContractibilityCache, Step, TransformKind
from graphcollapse.factories import complete, cycle, edgeless, octahedron, path

from helpers import brute_betti_gf2, connected_graphs, g8, gstar


class TestVerdicts:
    def test_point_accepted(self):
        assert is_strong_contractible(complete(1))

    def test_empty_rejected(self):
        assert not is_strong_contractible(Graph())

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_complete_graphs_accepted(self, n):
        assert is_strong_contractible(complete(n))

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_cycles_rejected(self, n):
        assert not is_strong_contractible(cycle(n))

    @pytest.mark.parametrize("n", [2, 3, 4, 7])
    def test_paths_accepted(self, n):
        assert is_strong_contractible(path(n))

    def test_disconnected_rejected(self):
        assert not is_strong_contractible(edgeless(2))
        assert not is_strong_contractible(Graph(range(4), [(0, 1), (2, 3)]))

    def test_gstar_accepted(self):
        assert is_strong_contractible(gstar())

    def test_octahedron_rejected(self):
        assert is_strong_contractible(octahedron()) is False

    @given(connected_graphs(max_n=6))
    def test_verdict_is_a_clean_bool(self, g):
        assert is_strong_contractible(g) in (True, False)


class TestGreedyOrder:
    def test_k4_deletes_first_qualifying_vertex_each_round(self):
        reduced, trace = contractible_reduction(complete(4))
        assert trace.deleted_vertices == (0, 1, 2)
        assert reduced == Graph([3])

    def test_gstar_trace(self):
        reduced, trace = contractible_reduction(gstar())
        assert trace.deleted_vertices == (0, 1, 2, 3, 4)
        assert reduced.vertices == (5,)

    def test_four_cycle_is_stuck(self):
        reduced, trace = contractible_reduction(cycle(4))
        assert reduced == cycle(4)
        assert trace.steps == ()

    @given(connected_graphs(max_n=7))
    def test_accepted_iff_reduction_reaches_point(self, g):
        reduced, _ = contractible_reduction(g)
        assert is_strong_contractible(g) == (reduced.n == 1)

    @given(connected_graphs(max_n=7))
    def test_trace_replay_reproduces_reduction(self, g):
        reduced, trace = contractible_reduction(g)
        assert trace.replay(g) == reduced

    @given(connected_graphs(max_n=7))
    def test_reduction_is_deterministic(self, g):
        first = contractible_reduction(g)
        clear_caches()
        second = contractible_reduction(g)
        assert first == second

    @given(connected_graphs(max_n=6))
    def test_reduced_graph_is_induced_subgraph(self, g):
        reduced, trace = contractible_reduction(g)
        assert set(reduced.vertices) <= set(g.vertices)
        assert g.induced(reduced.vertices) == reduced

    @given(connected_graphs(max_n=6))
    def test_greedy_acceptance_implies_some_order_acceptance(self, g):
        if is_strong_contractible(g):
            assert is_strong_contractible_any_order(g)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_no_order_gap_up_to_five_vertices(self, n):
        from graphcollapse import generate_connected, graph_from_canonical

        for form in generate_connected(n)[n]:
            g = graph_from_canonical(form)
            assert is_strong_contractible(g) == is_strong_contractible_any_order(g)


class TestHomologyOfAccepted:
    @given(connected_graphs(max_n=6))
    @settings(max_examples=40)
    def test_accepted_graphs_have_point_homology(self, g):
        if is_strong_contractible(g):
            betti = brute_betti_gf2(g)
            assert betti[0] == 1
            assert all(b == 0 for b in betti[1:])


class TestEdgeExtended:
    def test_vertex_reduction_alone_is_stuck_on_g8(self):
        reduced, trace = contractible_reduction(g8())
        assert reduced == g8()
        assert trace.steps == ()

    def test_edge_pass_strips_triangle_interior(self):
        reduced, trace = edge_extended_reduction(g8())
        assert reduced.n == 8
        assert reduced.m == 9
        deleted = trace.deleted_edges
        assert deleted == ((0, 1), (0, 2), (1, 2))
        assert brute_betti_gf2(reduced)[:2] == brute_betti_gf2(g8())[:2] == (1, 2)

    def test_agrees_with_vertex_reduction_when_never_stuck(self):
        assert edge_extended_reduction(complete(5)) == contractible_reduction(complete(5))

    @given(connected_graphs(max_n=7))
    def test_edge_extended_never_larger(self, g):
        vr, _ = contractible_reduction(g)
        er, _ = edge_extended_reduction(g)
        assert (er.n, er.m) <= (vr.n, vr.m)

    @given(connected_graphs(max_n=6))
    @settings(max_examples=40)
    def test_edge_extended_preserves_betti(self, g):
        er, _ = edge_extended_reduction(g)
        a, b = brute_betti_gf2(g), brute_betti_gf2(er)
        k = max(len(a), len(b))
        assert a + (0,) * (k - len(a)) == b + (0,) * (k - len(b))

    @given(connected_graphs(max_n=7))
    def test_edge_trace_replay(self, g):
        reduced, trace = edge_extended_reduction(g)
        assert trace.replay(g) == reduced


class TestTraceFormat:
    @given(connected_graphs(max_n=7))
    def test_text_roundtrip(self, g):
        _, trace = edge_extended_reduction(g)
        assert ReductionTrace.from_text(trace.to_text(), g) == trace

    def test_from_text_without_graph_drops_links(self):
        _, trace = contractible_reduction(complete(3))
        bare = ReductionTrace.from_text(trace.to_text())
        assert bare.deleted_vertices == trace.deleted_vertices
        assert all(s.link == frozenset() for s in bare.steps)

    def test_replay_rejects_stale_trace(self):
        _, trace = contractible_reduction(complete(4))
        with pytest.raises(ValueError, match="trace step"):
            trace.replay(cycle(4))

    def test_from_text_errors(self):
        with pytest.raises(ValueError):
            ReductionTrace.from_text("not a trace\n")
        with pytest.raises(ValueError):
            ReductionTrace.from_text("trace 2\nV 0\n")
        with pytest.raises(ValueError):
            ReductionTrace.from_text("trace 1\nQ 3\n")

    def test_steps_carry_links(self):
        _, trace = contractible_reduction(complete(3))
        first = trace.steps[0]
        assert first.kind == "vertex"
        assert first.element == 0
        assert first.link == frozenset({1, 2})

    def test_bad_step_kind_rejected(self):
        with pytest.raises(ValueError, match="step kind"):
            Step("face", 0)


class TestCaches:
    def test_shared_cache_is_transparent(self):
        private = ContractibilityCache()
        for g in (gstar(), cycle(5), complete(4), octahedron()):
            assert is_strong_contractible(g, cache=private) == is_strong_contractible(g)

    def test_clear_caches_keeps_answers(self):
        before = is_strong_contractible(gstar())
        clear_caches()
        assert is_strong_contractible(gstar()) == before


class TestLegalTransformations:
    def test_point_can_only_glue(self):
        kinds = {kind for kind, _ in legal_transformations(complete(1))}
        assert TransformKind.GLUE_VERTEX in kinds
        assert TransformKind.DELETE_VERTEX not in kinds
        payloads = [
            arg for kind, arg in legal_transformations(complete(1))
            if kind == TransformKind.GLUE_VERTEX
        ]
        assert frozenset({0}) in {frozenset(p) for p in payloads}

    def test_four_cycle_has_no_deletions(self):
        moves = legal_transformations(cycle(4))
        assert all(
            kind not in (TransformKind.DELETE_VERTEX, TransformKind.DELETE_EDGE)
            for kind, _ in moves
        )

    def test_k3_vertex_deletions(self):
        moves = legal_transformations(complete(3))
        deletions = [arg for kind, arg in moves if kind == TransformKind.DELETE_VERTEX]
        assert deletions == [0, 1, 2]

    @given(connected_graphs(max_n=5))
    @settings(max_examples=30)
    def test_listed_deletions_have_qualifying_links(self, g):
        for kind, arg in legal_transformations(g):
            if kind == TransformKind.DELETE_VERTEX:
                assert is_strong_contractible(g.neighborhood(arg))
            elif kind == TransformKind.DELETE_EDGE:
                u, v = arg
                assert is_strong_contractible(g.common_neighborhood(u, v))
