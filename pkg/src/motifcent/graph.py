"""Finite graphs, vertex-graph pairs and corpora.

Graphs are immutable value objects: two graphs are equal exactly when their
vertex sets, edge sets and orientation flag coincide.  This matters because
connected subgraphs are counted as labeled objects (vertex subset plus edge
subset), never up to isomorphism.

Vertex identifiers are ints or strings.  Integers sort numerically and come
before strings, which sort lexicographically; every deterministic ordering in
the package goes through :func:`vertex_key`.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence

import numpy as np

Vertex = Hashable
Edge = tuple

INFINITY = float("inf")
DEFAULT_ISOMORPHISM_CAP = 10

_INT_TOKEN = re.compile(r"-?(0|[1-9][0-9]*)")


class GraphError(ValueError):
    """Raised for malformed graphs or queries about unknown vertices."""


class GraphTooLarge(GraphError):
    """Raised when an exhaustive search would exceed its configured size cap."""


def vertex_key(v: Vertex) -> tuple:
    if isinstance(v, bool):
        raise GraphError(f"boolean vertex identifiers are not allowed: {v!r}")
    if isinstance(v, int):
        return (0, v, "")
    if isinstance(v, str):
        return (1, 0, v)
    raise GraphError(f"vertex identifiers must be int or str, got {type(v).__name__}")


def parse_vertex(token: str) -> Vertex:
    """Turn a textual identifier into a vertex; canonical integers become ints."""
    token = token.strip()
    if not token:
        raise GraphError("empty vertex identifier")
    return int(token) if _INT_TOKEN.fullmatch(token) else token


def _edge_key(edge: Edge) -> tuple:
    return (vertex_key(edge[0]), vertex_key(edge[1]))


@dataclass(frozen=True)
class Graph:
    """An undirected or directed simple graph.

    Undirected edges are stored as ordered tuples ``(a, b)`` with
    ``vertex_key(a) < vertex_key(b)``; directed edges keep their orientation.
    """

    vertices: frozenset
    edges: frozenset
    directed: bool = False

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Sequence[Vertex]] = (),
                 directed: bool = False):
        vs = frozenset(vertices)
        if not vs:
            raise GraphError("a graph needs at least one vertex")
        for v in vs:
            vertex_key(v)
        seen: set[tuple] = set()
        for raw in edges:
            u, w = tuple(raw)
            if u not in vs or w not in vs:
                raise GraphError(f"edge ({u!r}, {w!r}) has an endpoint outside the vertex set")
            if u == w:
                raise GraphError(f"self-loop on {u!r} is not allowed")
            if not directed and vertex_key(w) < vertex_key(u):
                u, w = w, u
            if (u, w) in seen:
                raise GraphError(f"duplicate edge ({u!r}, {w!r})")
            seen.add((u, w))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(seen))
        object.__setattr__(self, "directed", bool(directed))

    def __repr__(self) -> str:
        kind = "DiGraph" if self.directed else "Graph"
        return f"{kind}(V={list(self.sorted_vertices)}, E={list(self.sorted_edges)})"

    # -- cached structure -------------------------------------------------

    @cached_property
    def sorted_vertices(self) -> tuple:
        return tuple(sorted(self.vertices, key=vertex_key))

    @cached_property
    def sorted_edges(self) -> tuple:
        return tuple(sorted(self.edges, key=_edge_key))

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.sorted_vertices)}

    @cached_property
    def successors(self) -> dict:
        out: dict = {v: set() for v in self.vertices}
        for u, w in self.edges:
            out[u].add(w)
            if not self.directed:
                out[w].add(u)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def predecessors(self) -> dict:
        if not self.directed:
            return self.successors
        inn: dict = {v: set() for v in self.vertices}
        for u, w in self.edges:
            inn[w].add(u)
        return {v: frozenset(s) for v, s in inn.items()}

    @cached_property
    def neighbors(self) -> dict:
        """Neighbourhoods of the underlying undirected graph."""
        if not self.directed:
            return self.successors
        return {v: self.successors[v] | self.predecessors[v] for v in self.vertices}

    def degree(self, v: Vertex) -> int:
        self._require(v)
        if self.directed:
            return len(self.successors[v]) + len(self.predecessors[v])
        return len(self.successors[v])

    def has_edge(self, u: Vertex, w: Vertex) -> bool:
        if self.directed:
            return (u, w) in self.edges
        return (u, w) in self.edges or (w, u) in self.edges

    def adjacency_matrix(self) -> np.ndarray:
        """Row i, column j is 1 when there is an edge from the i-th to the j-th vertex."""
        n = len(self.vertices)
        a = np.zeros((n, n))
        idx = self.index
        for u, w in self.edges:
            a[idx[u], idx[w]] = 1.0
            if not self.directed:
                a[idx[w], idx[u]] = 1.0
        return a

    def canonical_key(self) -> tuple:
        """Sort key of the canonical subgraph order."""
        return (
            len(self.vertices),
            len(self.edges),
            tuple(vertex_key(v) for v in self.sorted_vertices),
            tuple(_edge_key(e) for e in self.sorted_edges),
        )

    def _require(self, *vs: Vertex) -> None:
        for v in vs:
            if v not in self.vertices:
                raise GraphError(f"unknown vertex {v!r}")

    def is_connected(self) -> bool:
        return len(component_vertices(self, self.sorted_vertices[0])) == len(self.vertices)


@dataclass(frozen=True)
class Pair:
    """A vertex together with a graph containing it."""

    vertex: Vertex
    graph: Graph

    def __post_init__(self) -> None:
        if self.vertex not in self.graph.vertices:
            raise GraphError(f"vertex {self.vertex!r} is not in the graph")

    def sort_key(self) -> tuple:
        return (self.graph.canonical_key(), self.graph.directed, vertex_key(self.vertex))


@dataclass(frozen=True)
class Corpus:
    """An ordered list of uniquely named graphs."""

    entries: tuple = field(default=())

    def __init__(self, entries: Iterable[tuple[str, Graph]] = ()):
        items = tuple((str(name), g) for name, g in entries)
        names = [name for name, _ in items]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise GraphError(f"duplicate graph names in corpus: {dupes}")
        for name, g in items:
            if not isinstance(g, Graph):
                raise GraphError(f"corpus entry {name!r} is not a Graph")
        object.__setattr__(self, "entries", items)

    @classmethod
    def of(cls, graphs: dict[str, Graph]) -> "Corpus":
        return cls(graphs.items())

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[str, Graph]]:
        return iter(self.entries)

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.entries]

    def graph(self, name: str) -> Graph:
        for n, g in self.entries:
            if n == name:
                return g
        raise GraphError(f"no graph named {name!r} in corpus")

    def name_of(self, g: Graph) -> str:
        """Name of the first entry structurally equal to ``g``."""
        for n, h in self.entries:
            if h == g:
                return n
        raise GraphError("graph is not part of the corpus")

    def pairs(self, name: str | None = None) -> list[tuple[str, Pair]]:
        """Named pairs in corpus order (vertices sorted inside each graph)."""
        out = []
        for n, g in self.entries:
            if name is not None and n != name:
                continue
            out.extend((n, Pair(v, g)) for v in g.sorted_vertices)
        return out

    def distinct_pairs(self) -> list[tuple[str, Pair]]:
        """Like :meth:`pairs` but drops structurally repeated pairs."""
        seen: set[Pair] = set()
        out = []
        for n, p in self.pairs():
            if p not in seen:
                seen.add(p)
                out.append((n, p))
        return out


# -- traversal ------------------------------------------------------------


def component_vertices(g: Graph, v: Vertex) -> frozenset:
    """Vertex set of the (weakly) connected component containing ``v``."""
    g._require(v)
    seen = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def reach_set(g: Graph, v: Vertex) -> frozenset:
    """K_v(G): the component of ``v`` when undirected, the vertices reachable from it otherwise."""
    if not g.directed:
        return component_vertices(g, v)
    return frozenset(bfs_distances(g, v))


def components(g: Graph) -> list[Graph]:
    """Induced subgraphs of the (weakly) connected components, ordered by smallest vertex."""
    remaining = list(g.sorted_vertices)
    assigned: set = set()
    out = []
    for v in remaining:
        if v in assigned:
            continue
        comp = component_vertices(g, v)
        assigned |= comp
        out.append(induced_subgraph(g, comp))
    return out


def induced_subgraph(g: Graph, s: Iterable[Vertex]) -> Graph:
    keep = frozenset(s)
    if not keep:
        raise GraphError("cannot induce a subgraph on an empty vertex set")
    g._require(*keep)
    return Graph(keep, (e for e in g.edges if e[0] in keep and e[1] in keep), g.directed)


def bfs_distances(g: Graph, source: Vertex) -> dict:
    """Hop distances from ``source`` to every reachable vertex (following orientation)."""
    g._require(source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.successors[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def path_counts(g: Graph, source: Vertex) -> tuple[dict, dict]:
    """Distances and numbers of shortest paths from ``source`` (sigma counts)."""
    g._require(source)
    dist = {source: 0}
    sigma = {source: 1}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.successors[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                sigma[w] = 0
                queue.append(w)
            if dist[w] == dist[u] + 1:
                sigma[w] += sigma[u]
    return dist, sigma


def distance(g: Graph, u: Vertex, v: Vertex) -> float | int:
    g._require(u, v)
    return bfs_distances(g, u).get(v, INFINITY)


def shortest_paths(g: Graph, u: Vertex, v: Vertex) -> set[tuple]:
    """All shortest paths from ``u`` to ``v`` as vertex tuples."""
    g._require(u, v)
    dist = bfs_distances(g, u)
    if v not in dist:
        return set()
    paths: set[tuple] = set()

    def back(node: Vertex, suffix: tuple) -> None:
        if node == u:
            paths.add((u,) + suffix)
            return
        for p in g.predecessors[node]:
            if dist.get(p) == dist[node] - 1:
                back(p, (node,) + suffix)

    back(v, ())
    return paths


def shortest_paths_through(g: Graph, u: Vertex, w: Vertex, via: Vertex) -> set[tuple]:
    g._require(via)
    return {p for p in shortest_paths(g, u, w) if via in p}


# -- constructors -----------------------------------------------------------


def single_vertex(v: Vertex = 1) -> Graph:
    return Graph([v])


def make_special(kind: str, n: int = 0, directed: bool = False) -> Graph:
    """Named graph families used throughout the witnesses.

    ``line``  vertices 1..n with edges {i, i+1} (directed: i -> i+1).
    ``star``  center 1 joined to 2..n (directed: leaves -> center).
    ``h``     vertices 1..n+2, both 1 and 2 joined to every i in 3..n+2.
    ``ghat3`` / ``ghat4``  one edge {v1, v2} plus isolated v3 (and v4).
    ``tee``   the 5-vertex tree 1-2-3-4 with a pendant 5 on vertex 2.
    """
    if kind in ("line", "star", "h") and (not isinstance(n, int) or n < 1):
        raise GraphError(f"{kind} needs n >= 1, got {n!r}")
    if kind == "line":
        return Graph(range(1, n + 1), [(i, i + 1) for i in range(1, n)], directed)
    if kind == "star":
        edges = [(i, 1) if directed else (1, i) for i in range(2, n + 1)]
        return Graph(range(1, n + 1), edges, directed)
    if kind == "h":
        rest = range(3, n + 3)
        edges = [(1, i) for i in rest] + [(2, i) for i in rest]
        return Graph(range(1, n + 3), edges, directed)
    if kind == "ghat3":
        return Graph(["v1", "v2", "v3"], [("v1", "v2")], directed)
    if kind == "ghat4":
        return Graph(["v1", "v2", "v3", "v4"], [("v1", "v2")], directed)
    if kind == "tee":
        return Graph(range(1, 6), [(1, 2), (2, 3), (3, 4), (2, 5)], directed)
    raise GraphError(f"unknown special graph kind {kind!r}")


def relabel(g: Graph, mapping: dict) -> Graph:
    return Graph((mapping[v] for v in g.vertices),
                 ((mapping[a], mapping[b]) for a, b in g.edges), g.directed)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Disjoint union with vertices renumbered 1..N, graph by graph in sorted order."""
    if not graphs:
        raise GraphError("disjoint union of no graphs")
    directed = graphs[0].directed
    if any(g.directed != directed for g in graphs):
        raise GraphError("cannot mix directed and undirected graphs")
    vertices: list[int] = []
    edges: list[tuple] = []
    offset = 0
    for g in graphs:
        mapping = {v: offset + i + 1 for i, v in enumerate(g.sorted_vertices)}
        vertices.extend(mapping.values())
        edges.extend((mapping[a], mapping[b]) for a, b in g.edges)
        offset += len(g.vertices)
    return Graph(vertices, edges, directed)


# -- isomorphism ------------------------------------------------------------


def _signature(g: Graph, v: Vertex) -> tuple:
    return (len(g.successors[v]), len(g.predecessors[v]))


def _find_isomorphism(g1: Graph, g2: Graph, fixed: dict, cap: int) -> dict | None:
    for g in (g1, g2):
        if len(g.vertices) > cap:
            raise GraphTooLarge(f"isomorphism search limited to {cap} vertices, got {len(g.vertices)}")
    if g1.directed != g2.directed or len(g1.vertices) != len(g2.vertices) \
            or len(g1.edges) != len(g2.edges):
        return None
    if sorted(_signature(g1, v) for v in g1.vertices) != sorted(_signature(g2, v) for v in g2.vertices):
        return None
    for a, b in fixed.items():
        if _signature(g1, a) != _signature(g2, b):
            return None

    order = list(fixed) + [v for v in g1.sorted_vertices if v not in fixed]
    mapping: dict = {}
    used: set = set()

    def compatible(a: Vertex, b: Vertex) -> bool:
        for x, y in mapping.items():
            if g1.has_edge(a, x) != g2.has_edge(b, y) or g1.has_edge(x, a) != g2.has_edge(y, b):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        a = order[i]
        options = [fixed[a]] if a in fixed else g2.sorted_vertices
        for b in options:
            if b in used or _signature(g1, a) != _signature(g2, b) or not compatible(a, b):
                continue
            mapping[a] = b
            used.add(b)
            if extend(i + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    return dict(mapping) if extend(0) else None


def graphs_isomorphic(g1: Graph, g2: Graph, cap: int = DEFAULT_ISOMORPHISM_CAP) -> bool:
    return _find_isomorphism(g1, g2, {}, cap) is not None


def are_isomorphic(p1: Pair, p2: Pair, cap: int = DEFAULT_ISOMORPHISM_CAP) -> bool:
    """True iff some graph isomorphism maps ``p1.vertex`` onto ``p2.vertex``."""
    return _find_isomorphism(p1.graph, p2.graph, {p1.vertex: p2.vertex}, cap) is not None


# -- graph classes ------------------------------------------------------------


def largest_eigenvalue(g: Graph) -> float:
    return float(np.max(np.linalg.eigvals(g.adjacency_matrix()).real))


def has_unique_shortest_paths(g: Graph) -> bool:
    for u in g.vertices:
        _, sigma = path_counts(g, u)
        if any(count > 1 for count in sigma.values()):
            return False
    return True


def in_class_k1(g: Graph, cap: int = DEFAULT_ISOMORPHISM_CAP, tol: float = 1e-9) -> bool:
    """Components reaching the global largest eigenvalue are pairwise isomorphic."""
    comps = components(g)
    lams = [largest_eigenvalue(c) for c in comps]
    top = max(lams)
    winners = [c for c, lam in zip(comps, lams) if abs(lam - top) <= tol]
    return all(graphs_isomorphic(winners[0], other, cap) for other in winners[1:])


def class_membership(g: Graph, cls: str, cap: int = DEFAULT_ISOMORPHISM_CAP) -> bool:
    if cls == "unique_shortest_paths":
        return has_unique_shortest_paths(g)
    if cls == "k1":
        return in_class_k1(g, cap)
    raise GraphError(f"unknown graph class {cls!r}")


def all_vertex_pairs(g: Graph) -> Iterator[tuple]:
    return itertools.product(g.sorted_vertices, repeat=2)
