"""Build explicit subgraph-family/filter representations of measures on a corpus.

A family is stored by its sizes |F(v,G)|; concrete member subgraphs can be
attached afterwards with :func:`materialize_witnesses`, which always takes a
prefix of the canonical listing of A(v,G).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .coloring import (
    Precoloring,
    PrecoloringError,
    check_consistent,
    check_injective,
    check_realizable,
    color_total_order,
)
from .graph import Corpus, Graph, Pair, shortest_paths
from .measures import MeasureSpec, evaluate
from .subgraphs import bounded_count, count_connected_subgraphs, enumerate_connected_subgraphs
from .values import (
    DEFAULT_EPSILON,
    GLOBAL,
    PropertyReport,
    check_property,
    compare,
    distinct_value_count,
    group_values,
    same_value,
)


class SynthesisError(ValueError):
    """The corpus does not admit the requested construction."""

    def __init__(self, message: str, report: PropertyReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class FamilyAssignment:
    """Sizes |F(v,G)| per pair, with optional materialised member subgraphs."""

    sizes: Mapping = field(hash=False)
    witnesses: Mapping | None = field(default=None, hash=False)

    def __getitem__(self, p: Pair) -> int:
        try:
            return self.sizes[p]
        except KeyError:
            raise SynthesisError(f"family has no size for vertex {p.vertex!r}") from None


@dataclass(frozen=True)
class FilterTable:
    entries: Mapping = field(hash=False)
    monotone: bool = False

    def __post_init__(self) -> None:
        if self.monotone and not self.is_non_decreasing():
            raise SynthesisError("filter flagged monotone is not non-decreasing")

    def __call__(self, size: int):
        try:
            return self.entries[size]
        except KeyError:
            raise SynthesisError(f"filter is undefined at {size}") from None

    def is_non_decreasing(self) -> bool:
        keys = sorted(self.entries)
        return all(self.entries[a] <= self.entries[b] for a, b in zip(keys, keys[1:]))


@dataclass(frozen=True)
class Mismatch:
    graph: str
    vertices: tuple
    expected: object
    actual: object


@dataclass(frozen=True)
class VerificationReport:
    mode: str
    ok: bool
    mismatches: tuple = ()
    checked: int = 0


Ranking = tuple  # tuple of vertex tuples, ascending by value


def induced_ranking(m: MeasureSpec, g: Graph, epsilon: float = DEFAULT_EPSILON) -> Ranking:
    """Vertices of ``g`` grouped into equal-value classes, lowest value first."""
    values = {v: evaluate(m, Pair(v, g)) for v in g.sorted_vertices}
    return _rank(values, g.sorted_vertices, epsilon)


def _rank(values: dict, order: tuple, epsilon: float) -> Ranking:
    reps = group_values(values.values(), epsilon)
    classes: list[list] = [[] for _ in reps]
    for v in order:
        for i, r in enumerate(reps):
            if same_value(values[v], r, epsilon):
                classes[i].append(v)
                break
    return tuple(tuple(c) for c in classes)


def evaluate_representation(fam: FamilyAssignment, f: FilterTable, p: Pair):
    return f(fam[p])


def _counts(corpus: Corpus, bound: int) -> dict:
    return {p: bounded_count(p, bound) for _, p in corpus.distinct_pairs()}


def _require_property(m: MeasureSpec, corpus: Corpus, prop: str, epsilon: float, scope_count: int) -> None:
    # Beyond the number of distinct values every inequality holds trivially.
    report = check_property(m, corpus, prop, max(scope_count, 1), epsilon)
    if not report.holds:
        v = report.first_violation
        raise SynthesisError(
            f"{prop} fails at n={v.n} in scope {v.scope}: |Val|={v.val_count}, "
            f"|BVal|={v.bval_count} > bound {v.bound}", report)


def _check_sizes(fam: FamilyAssignment, counts: dict) -> None:
    for p, size in fam.sizes.items():
        limit = counts.get(p)
        if size < 0 or (limit is not None and size > limit):
            raise SynthesisError(f"internal error: size {size} exceeds |A| for {p.vertex!r}")


def synthesize_value_representation(m: MeasureSpec, corpus: Corpus,
                                    epsilon: float = DEFAULT_EPSILON) -> tuple[FamilyAssignment, FilterTable]:
    """Exact-value representation, ordering values by the first n at which they appear."""
    distinct = distinct_value_count(m, corpus, GLOBAL, epsilon)
    _require_property(m, corpus, "bvp", epsilon, distinct)
    counts = _counts(corpus, distinct)
    values = {p: evaluate(m, p) for _, p in corpus.distinct_pairs()}
    reps = group_values(values.values(), epsilon)

    def threshold(rep) -> float:
        hits = [counts[p] for p, x in values.items() if same_value(x, rep, epsilon) and counts[p] is not None]
        return min(hits) if hits else math.inf

    ordered = sorted(reps, key=lambda r: (threshold(r), r))
    position = {i: r for i, r in enumerate(ordered)}
    sizes = {p: _index_of(ordered, x, epsilon) for p, x in values.items()}
    fam = FamilyAssignment(sizes)
    _check_sizes(fam, counts)
    return fam, FilterTable(position, monotone=False)


def _index_of(reps: list, x, epsilon: float) -> int:
    for i, r in enumerate(reps):
        if same_value(r, x, epsilon):
            return i
    raise SynthesisError(f"value {x!r} missing from the value list")


def synthesize_monotonic_representation(m: MeasureSpec, corpus: Corpus,
                                        epsilon: float = DEFAULT_EPSILON) -> tuple[FamilyAssignment, FilterTable]:
    """Representation with a non-decreasing filter: the i-th smallest value gets size i - 1."""
    distinct = distinct_value_count(m, corpus, GLOBAL, epsilon)
    _require_property(m, corpus, "monotonic_bvp", epsilon, distinct)
    counts = _counts(corpus, distinct)
    values = {p: evaluate(m, p) for _, p in corpus.distinct_pairs()}
    reps = group_values(values.values(), epsilon)
    fam = FamilyAssignment({p: _index_of(reps, x, epsilon) for p, x in values.items()})
    _check_sizes(fam, counts)
    return fam, FilterTable(dict(enumerate(reps)), monotone=True)


def _per_graph_ranks(m: MeasureSpec, corpus: Corpus, epsilon: float) -> dict:
    sizes = {}
    width = 0
    for _, g in corpus:
        ranking = induced_ranking(m, g, epsilon)
        width = max(width, len(ranking))
        for i, cls in enumerate(ranking):
            for v in cls:
                p = Pair(v, g)
                if sizes.get(p, i) != i:
                    raise SynthesisError("internal error: conflicting class index")
                sizes[p] = i
    return sizes, width


def synthesize_connected_ranking_representation(
        m: MeasureSpec, corpus: Corpus,
        epsilon: float = DEFAULT_EPSILON) -> tuple[FamilyAssignment, FilterTable]:
    """Ranking representation for connected graphs: class i gets size i - 1 and f(k) = k + 1."""
    for name, g in corpus:
        if not g.is_connected():
            raise SynthesisError(f"graph {name!r} is not connected")
    sizes, width = _per_graph_ranks(m, corpus, epsilon)
    for p in sizes:
        # on a connected graph every vertex lies in at least |V| connected subgraphs
        if bounded_count(p, len(p.graph.vertices) - 1) is not None:
            raise SynthesisError(f"internal error: fewer than |V| connected subgraphs at {p.vertex!r}")
    fam = FamilyAssignment(sizes)
    return fam, FilterTable({k: k + 1 for k in range(width)}, monotone=True)


def synthesize_monotonic_ranking_representation(
        m: MeasureSpec, corpus: Corpus,
        epsilon: float = DEFAULT_EPSILON) -> tuple[FamilyAssignment, FilterTable]:
    """Ranking representation for arbitrary graphs under the per-graph monotonic bound."""
    widest = max(distinct_value_count(m, corpus, name, epsilon) for name in corpus.names)
    _require_property(m, corpus, "nonuniform_monotonic_bvp", epsilon, widest)
    sizes, width = _per_graph_ranks(m, corpus, epsilon)
    fam = FamilyAssignment(sizes)
    _check_sizes(fam, {p: bounded_count(p, width) for p in sizes})
    return fam, FilterTable({k: k + 1 for k in range(width)}, monotone=True)


def synthesize_filter_from_precoloring(pc: Precoloring, m: MeasureSpec,
                                       epsilon: float = DEFAULT_EPSILON) -> tuple[FamilyAssignment, FilterTable]:
    """Family sizes equal to the colors; the filter follows a linear extension of the color order."""
    pc.validate_bounds()
    for check in (check_injective, check_consistent, check_realizable):
        result = check(pc, m, epsilon)
        if not result:
            raise PrecoloringError(f"{check.__name__} failed with witness {result.witness}")
    entries = {}
    for position, group in enumerate(color_total_order(pc, m, epsilon), start=1):
        for color in group:
            entries[color] = Fraction(position)
    return FamilyAssignment(dict(pc.assignment)), FilterTable(entries, monotone=False)


# -- verification ----------------------------------------------------------------


def verify_representation(m: MeasureSpec, fam: FamilyAssignment, f: FilterTable, corpus: Corpus,
                          mode: str = "values", epsilon: float = DEFAULT_EPSILON) -> VerificationReport:
    """Compare the measure with f(|F|) pair by pair (values) or graph by graph (ranking)."""
    if mode not in ("values", "ranking"):
        raise ValueError(f"unknown verification mode {mode!r}")
    mismatches = []
    checked = 0
    for name, g in corpus:
        actual = {v: evaluate(m, Pair(v, g)) for v in g.sorted_vertices}
        represented = {v: evaluate_representation(fam, f, Pair(v, g)) for v in g.sorted_vertices}
        if mode == "values":
            for v in g.sorted_vertices:
                checked += 1
                if not same_value(actual[v], represented[v], epsilon):
                    mismatches.append(Mismatch(name, (v,), actual[v], represented[v]))
        else:
            for i, u in enumerate(g.sorted_vertices):
                for w in g.sorted_vertices[i + 1:]:
                    checked += 1
                    want = compare(actual[u], actual[w], epsilon)
                    got = compare(represented[u], represented[w], epsilon)
                    if want != got:
                        mismatches.append(Mismatch(name, (u, w), want, got))
    return VerificationReport(mode, not mismatches, tuple(mismatches), checked)


def materialize_witnesses(fam: FamilyAssignment) -> FamilyAssignment:
    """Attach the first |F(v,G)| canonical members of A(v,G) to every pair."""
    witnesses = {}
    for p, size in fam.sizes.items():
        if size == 0:
            witnesses[p] = ()
            continue
        members = enumerate_connected_subgraphs(p, cap=size).members
        if len(members) < size:
            raise SynthesisError(f"size {size} exceeds |A| = {len(members)} at {p.vertex!r}")
        witnesses[p] = members
    return FamilyAssignment(dict(fam.sizes), witnesses)


# -- families known in closed form -------------------------------------------------


def shortest_path_graphs_through(p: Pair) -> list[Graph]:
    """Distinct path subgraphs of shortest u-w paths (u, w != v) that visit v."""
    g, v = p.graph, p.vertex
    seen: set = set()
    out = []
    for u in g.sorted_vertices:
        for w in g.sorted_vertices:
            if v in (u, w) or u == w:
                continue
            for path in sorted(shortest_paths(g, u, w)):
                if v not in path:
                    continue
                sub = Graph(path, zip(path, path[1:]), g.directed)
                if sub not in seen:
                    seen.add(sub)
                    out.append(sub)
    out.sort(key=Graph.canonical_key)
    return out


def stress_representation(corpus: Corpus) -> tuple[FamilyAssignment, FilterTable]:
    """Shortest-path family with f(k) = 2k undirected, f(k) = k directed."""
    pairs = [p for _, p in corpus.distinct_pairs()]
    witnesses = {p: tuple(shortest_path_graphs_through(p)) for p in pairs}
    sizes = {p: len(w) for p, w in witnesses.items()}
    directed = any(p.graph.directed for p in pairs)
    if directed and not all(p.graph.directed for p in pairs):
        raise SynthesisError("mixed directed and undirected corpus")
    factor = 1 if directed else 2
    top = max(sizes.values(), default=0)
    return FamilyAssignment(sizes, witnesses), FilterTable({k: factor * k for k in range(top + 1)}, True)


def all_subgraphs_representation(corpus: Corpus, cap: int | None = None) -> tuple[FamilyAssignment, FilterTable]:
    """Full family A(v,G) with the base-2 logarithm as filter (sizes only)."""
    sizes = {p: count_connected_subgraphs(p, cap) for _, p in corpus.distinct_pairs()}
    return FamilyAssignment(sizes), FilterTable({k: math.log2(k) for k in sorted(set(sizes.values()))}, True)
