"""Table measures that separate the expressiveness classes, with their corpora."""

from __future__ import annotations

from .graph import Corpus, Graph, Pair, make_special, single_vertex
from .measures import MeasureSpec

NAMES = ("prop31", "prop34", "prop57", "prop61")


def _ascending_on_ghat(ghat: Graph, name: str) -> tuple[MeasureSpec, Corpus]:
    # vertex v_i of the witness graph gets value i + 1, everything else 1
    table = {Pair(v, ghat): i + 2 for i, v in enumerate(ghat.sorted_vertices)}
    corpus = Corpus([("single", single_vertex("v")), ("ghat", ghat)])
    return MeasureSpec.from_table(table, default=1, name=name), corpus


def _three_shifted() -> tuple[MeasureSpec, Corpus]:
    # Three copies of "isolated vertex + one edge"; the isolated vertex moves
    # from the bottom of the ranking (G1) to the top (G2) to the middle (G3).
    graphs = {}
    table = {}
    layout = {
        "G1": ("v", {1: 1, 2: 2, 3: 3}),
        "G2": ("u", {1: 3, 2: 1, 3: 2}),
        "G3": ("w", {1: 2, 2: 3, 3: 1}),
    }
    for name, (prefix, values) in layout.items():
        a, b, c = (f"{prefix}{i}" for i in (1, 2, 3))
        g = Graph([a, b, c], [(b, c)])
        graphs[name] = g
        for i, value in values.items():
            table[Pair(f"{prefix}{i}", g)] = value
    return MeasureSpec.from_table(table, name="prop57"), Corpus(graphs.items())


def _descending_on_edge_graph() -> tuple[MeasureSpec, Corpus]:
    ghat = Graph(["v1", "v2", "v3"], [("v2", "v3")])
    table = {Pair("v1", ghat): 3, Pair("v2", ghat): 2, Pair("v3", ghat): 1}
    corpus = Corpus([("single", single_vertex("v")), ("ghat", ghat)])
    return MeasureSpec.from_table(table, default=1, name="prop61"), corpus


def builtin_counterexample(name: str) -> tuple[MeasureSpec, Corpus]:
    """The named separating measure together with its minimal corpus.

    ``prop31``  not value-representable (|Val^2| = 4).
    ``prop34``  not even ranking-representable (uncolorable).
    ``prop57``  per-graph bounded values, yet uncolorable.
    ``prop61``  value-representable but not with a monotone filter.
    """
    if name == "prop31":
        return _ascending_on_ghat(make_special("ghat3"), "prop31")
    if name == "prop34":
        return _ascending_on_ghat(make_special("ghat4"), "prop34")
    if name == "prop57":
        return _three_shifted()
    if name == "prop61":
        return _descending_on_edge_graph()
    raise ValueError(f"unknown counterexample {name!r}; expected one of {NAMES}")
