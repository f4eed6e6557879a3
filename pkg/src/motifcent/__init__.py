"""Which centrality measures can be written as f(|F(v,G)|) over connected subgraphs.

The package counts connected subgraphs around a vertex, evaluates classic
centrality measures, checks the counting properties that decide whether a
measure has a subgraph-family representation on a finite corpus, and builds
such representations when they exist.
"""

from .coloring import (
    Precoloring,
    PrecoloringError,
    check_consistent,
    check_injective,
    check_realizable,
    search_precoloring,
)
from .counterexamples import builtin_counterexample
from .graph import (
    Corpus,
    Graph,
    GraphError,
    Pair,
    are_isomorphic,
    class_membership,
    components,
    disjoint_union,
    distance,
    induced_subgraph,
    make_special,
    shortest_paths,
    shortest_paths_through,
    single_vertex,
)
from .measures import MeasureError, MeasureSpec, evaluate
from .subgraphs import (
    CapExceeded,
    count_connected_subgraphs,
    enumerate_cliques_containing,
    enumerate_connected_subgraphs,
)
from .synthesis import (
    FamilyAssignment,
    FilterTable,
    SynthesisError,
    evaluate_representation,
    induced_ranking,
    materialize_witnesses,
    synthesize_connected_ranking_representation,
    synthesize_filter_from_precoloring,
    synthesize_monotonic_ranking_representation,
    synthesize_monotonic_representation,
    synthesize_value_representation,
    verify_representation,
)
from .values import PropertyReport, bval_set, check_property, val_set

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "Corpus",
    "FamilyAssignment",
    "FilterTable",
    "Graph",
    "GraphError",
    "MeasureError",
    "MeasureSpec",
    "Pair",
    "Precoloring",
    "PrecoloringError",
    "PropertyReport",
    "SynthesisError",
    "are_isomorphic",
    "builtin_counterexample",
    "bval_set",
    "check_consistent",
    "check_injective",
    "check_property",
    "check_realizable",
    "class_membership",
    "components",
    "count_connected_subgraphs",
    "disjoint_union",
    "distance",
    "enumerate_cliques_containing",
    "enumerate_connected_subgraphs",
    "evaluate",
    "evaluate_representation",
    "induced_ranking",
    "induced_subgraph",
    "make_special",
    "materialize_witnesses",
    "search_precoloring",
    "shortest_paths",
    "shortest_paths_through",
    "single_vertex",
    "synthesize_connected_ranking_representation",
    "synthesize_filter_from_precoloring",
    "synthesize_monotonic_ranking_representation",
    "synthesize_monotonic_representation",
    "synthesize_value_representation",
    "val_set",
    "verify_representation",
]
