"""Contractible graph reductions and what they preserve.

A vertex whose neighborhood is (recursively) reducible can be deleted
without changing the homotopy type of the graph's clique complex; same
for an edge whose endpoints' common neighborhood is reducible. This
package implements the greedy recursive test, the reduction procedure
with replayable traces, explicit collapse sequences and homology maps
that certify the preservation claims, a reduced Vietoris-Rips
persistence pipeline, and an exhaustive census of small graphs.
"""

from .canon import CanonicalForm, canonical_form, canonical_order, graph_from_canonical
from .census import (
    Census,
    CensusConfig,
    CensusEntry,
    ConjectureReport,
    build_census,
    check_conjecture,
    classify_graph,
    deletion_order_gap,
    generate_connected,
)
from .complexes import (
    CollapseVerdict,
    FreePair,
    SimplicialComplex,
    clique_complex,
    collapse_via_trace,
    enumerate_cliques,
    is_collapsible,
)
from .contract import (
    ReductionTrace,
    Step,
    clear_caches,
    contractible_reduction,
    edge_extended_reduction,
    is_strong_contractible,
    is_strong_contractible_any_order,
    legal_transformations,
)
from .errors import BudgetExceededError, GraphFormatError, InternalInconsistencyError
from .graphs import (
    Graph,
    load_graph,
    parse_adjacency_matrix,
    parse_edge_list,
    to_edge_list_text,
)
from .homology import (
    BoundaryMatrix,
    ChainVector,
    Coefficients,
    Homology,
    HomologyGroup,
    InducedMap,
    betti_numbers,
    boundary,
    boundary_matrix,
    clique_basis,
    express_in_homology_basis,
    homology,
    induced_map,
    join_edge,
    join_vertex,
    push_cycle,
    push_cycle_edge,
    push_cycle_sequence,
    split_at_edge,
    split_at_vertex,
)
from .persistence import (
    Barcode,
    Filtration,
    Interval,
    PointCloud,
    ReducedStage,
    barcode,
    format_barcode_csv,
    oracle_persistence,
    parse_barcode_csv,
    parse_distance_matrix,
    parse_points,
    persistent_betti,
    reduce_filtration,
    vr_filtration,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Graph",
    "load_graph",
    "parse_edge_list",
    "parse_adjacency_matrix",
    "to_edge_list_text",
    "GraphFormatError",
    "BudgetExceededError",
    "InternalInconsistencyError",
    "CanonicalForm",
    "canonical_form",
    "canonical_order",
    "graph_from_canonical",
    "is_strong_contractible",
    "is_strong_contractible_any_order",
    "contractible_reduction",
    "edge_extended_reduction",
    "legal_transformations",
    "ReductionTrace",
    "Step",
    "clear_caches",
    "SimplicialComplex",
    "FreePair",
    "CollapseVerdict",
    "clique_complex",
    "enumerate_cliques",
    "is_collapsible",
    "collapse_via_trace",
    "Coefficients",
    "ChainVector",
    "boundary",
    "boundary_matrix",
    "BoundaryMatrix",
    "Homology",
    "HomologyGroup",
    "homology",
    "betti_numbers",
    "clique_basis",
    "join_vertex",
    "split_at_vertex",
    "join_edge",
    "split_at_edge",
    "push_cycle",
    "push_cycle_edge",
    "push_cycle_sequence",
    "express_in_homology_basis",
    "InducedMap",
    "induced_map",
    "PointCloud",
    "Filtration",
    "vr_filtration",
    "ReducedStage",
    "reduce_filtration",
    "persistent_betti",
    "Interval",
    "Barcode",
    "barcode",
    "oracle_persistence",
    "format_barcode_csv",
    "parse_barcode_csv",
    "parse_points",
    "parse_distance_matrix",
    "Census",
    "CensusConfig",
    "CensusEntry",
    "ConjectureReport",
    "generate_connected",
    "classify_graph",
    "build_census",
    "check_conjecture",
    "deletion_order_gap",
]
