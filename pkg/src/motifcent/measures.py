"""Centrality measures over vertex-graph pairs.

Combinatorial measures return exact numbers (``int`` or ``Fraction``) so that
value sets can be compared without rounding; the spectral and random-walk
measures return floats.  Per-graph results are memoised because every
measure here is a pure function of the graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

import numpy as np

from .graph import Graph, Pair, component_vertices, induced_subgraph, path_counts, bfs_distances
from .subgraphs import count_connected_subgraphs, enumerate_cliques_containing

BUILTIN_KINDS = (
    "stress",
    "all_subgraphs",
    "degree",
    "cross_clique",
    "closeness",
    "harmonic",
    "pagerank",
    "pagerank_local",
    "eigenvector",
    "betweenness",
)
LOCAL_KINDS = (
    "stress", "all_subgraphs", "degree", "cross_clique",
    "closeness", "harmonic", "betweenness", "pagerank_local",
)
FLOAT_KINDS = ("all_subgraphs", "pagerank", "pagerank_local", "eigenvector")

DEFAULT_ALPHA = 0.8
DEFAULT_TOLERANCE = 1e-6
POWER_ITERATION_CAP = 10 ** 6


class MeasureError(ValueError):
    pass


class ConvergenceError(MeasureError):
    pass


@dataclass(frozen=True)
class MeasureSpec:
    """A builtin measure, or a finite table with an optional default value."""

    kind: str
    table: Mapping = field(default=None, compare=False, hash=False, repr=False)
    default: object = None
    alpha: float = DEFAULT_ALPHA
    tolerance: float = DEFAULT_TOLERANCE
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in BUILTIN_KINDS and self.kind != "table":
            raise MeasureError(f"unknown measure kind {self.kind!r}")
        if self.kind == "table" and self.table is None:
            raise MeasureError("a table measure needs table data")
        if not 0 < self.alpha < 1:
            raise MeasureError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.tolerance <= 0:
            raise MeasureError(f"tolerance must be positive, got {self.tolerance}")

    @classmethod
    def builtin(cls, kind: str, **params) -> "MeasureSpec":
        return cls(kind=kind, name=kind, **params)

    @classmethod
    def from_table(cls, table: Mapping[Pair, object], default=None, name: str = "table") -> "MeasureSpec":
        data = {p: _exact(value) for p, value in table.items()}
        return cls(kind="table", table=data, default=None if default is None else _exact(default),
                   name=name)

    @property
    def is_exact(self) -> bool:
        return self.kind not in FLOAT_KINDS

    def __call__(self, p: Pair):
        return evaluate(self, p)


def _exact(value):
    if isinstance(value, bool):
        raise MeasureError("boolean measure values are not allowed")
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise MeasureError(f"cannot read {value!r} as a real number")


# -- per-graph computations ----------------------------------------------------


@lru_cache(maxsize=2048)
def _all_path_counts(g: Graph) -> dict:
    return {u: path_counts(g, u) for u in g.vertices}


def _through_counts(g: Graph, v) -> list[tuple[int, int]]:
    """(sigma(u,v) * sigma(v,w), sigma(u,w)) for every ordered u, w != v with v on a geodesic."""
    table = _all_path_counts(g)
    dist_v, sigma_v = table[v]
    out = []
    for u in g.sorted_vertices:
        if u == v:
            continue
        dist_u, sigma_u = table[u]
        if v not in dist_u:
            continue
        for w, d_vw in dist_v.items():
            if w == v or w == u or w not in dist_u:
                continue
            if dist_u[v] + d_vw == dist_u[w]:
                out.append((sigma_u[v] * sigma_v[w], sigma_u[w]))
    return out


def stress(p: Pair) -> int:
    """Number of shortest paths between other vertices passing through the vertex."""
    return sum(through for through, _ in _through_counts(p.graph, p.vertex))


def betweenness(p: Pair) -> Fraction:
    return sum((Fraction(through, total) for through, total in _through_counts(p.graph, p.vertex)),
               Fraction(0))


def all_subgraphs(p: Pair, cap: int | None = None) -> float:
    return math.log2(count_connected_subgraphs(p, cap))


def degree(p: Pair) -> int:
    return p.graph.degree(p.vertex)


def cross_clique(p: Pair) -> int:
    return len(enumerate_cliques_containing(p).members)


def distance_sum(p: Pair) -> int:
    return sum(bfs_distances(p.graph, p.vertex).values())


def closeness(p: Pair) -> Fraction:
    total = distance_sum(p)
    return Fraction(1, total) if total else Fraction(0)


def harmonic(p: Pair) -> Fraction:
    dist = bfs_distances(p.graph, p.vertex)
    return sum((Fraction(1, d) for d in dist.values() if d), Fraction(0))


@lru_cache(maxsize=2048)
def pagerank_vector(g: Graph, alpha: float = DEFAULT_ALPHA) -> dict:
    """Solve (I - alpha P^T) x = (1 - alpha) u with uniform u; dangling rows teleport uniformly."""
    a = g.adjacency_matrix()
    n = a.shape[0]
    out_deg = a.sum(axis=1)
    p = np.empty_like(a)
    for i in range(n):
        p[i] = a[i] / out_deg[i] if out_deg[i] else np.full(n, 1.0 / n)
    system = np.eye(n) - alpha * p.T
    rhs = np.full(n, (1.0 - alpha) / n)
    try:
        x = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exc:
        raise MeasureError(f"PageRank system is singular: {exc}") from exc
    return {v: float(x[i]) for i, v in enumerate(g.sorted_vertices)}


@lru_cache(maxsize=2048)
def local_pagerank_vector(g: Graph, alpha: float = DEFAULT_ALPHA) -> dict:
    """PageRank solved inside each component, scaled to sum to the component size."""
    out: dict = {}
    done: set = set()
    for v in g.sorted_vertices:
        if v in done:
            continue
        comp = component_vertices(g, v)
        done |= comp
        sub = pagerank_vector(induced_subgraph(g, comp), alpha)
        out.update({u: x * len(comp) for u, x in sub.items()})
    return out


def pagerank(p: Pair, alpha: float = DEFAULT_ALPHA, mode: str = "stochastic") -> float:
    if mode == "stochastic":
        return pagerank_vector(p.graph, alpha)[p.vertex]
    if mode == "local":
        return local_pagerank_vector(p.graph, alpha)[p.vertex]
    raise MeasureError(f"unknown PageRank mode {mode!r}")


@lru_cache(maxsize=2048)
def eigenvector_vector(g: Graph, tolerance: float = DEFAULT_TOLERANCE,
                       max_iter: int = POWER_ITERATION_CAP) -> dict:
    """Power iteration on A^T + I from the all-ones vector, L2-normalised each step.

    The identity shift keeps the dominant eigenvector but breaks the +/- lambda
    tie of bipartite graphs, which would otherwise make the iteration oscillate.
    """
    m = g.adjacency_matrix().T + np.eye(len(g.vertices))
    x = np.ones(len(g.vertices))
    x /= np.linalg.norm(x)
    for _ in range(max_iter):
        y = m @ x
        y /= np.linalg.norm(y)
        if np.abs(y - x).sum() < tolerance:
            return {v: float(y[i]) for i, v in enumerate(g.sorted_vertices)}
        x = y
    raise ConvergenceError(f"power iteration did not converge within {max_iter} steps")


def eigenvector_centrality(p: Pair, tolerance: float = DEFAULT_TOLERANCE) -> float:
    return eigenvector_vector(p.graph, tolerance)[p.vertex]


# -- dispatch ---------------------------------------------------------------------


def _builtin(kind: str, m: MeasureSpec) -> Callable[[Pair], object]:
    return {
        "stress": stress,
        "all_subgraphs": all_subgraphs,
        "degree": degree,
        "cross_clique": cross_clique,
        "closeness": closeness,
        "harmonic": harmonic,
        "betweenness": betweenness,
        "pagerank": lambda p: pagerank(p, m.alpha, "stochastic"),
        "pagerank_local": lambda p: pagerank(p, m.alpha, "local"),
        "eigenvector": lambda p: eigenvector_centrality(p, m.tolerance),
    }[kind]


def evaluate(m: MeasureSpec, p: Pair):
    if m.kind == "table":
        if p in m.table:
            return m.table[p]
        if m.default is None:
            raise MeasureError(f"table measure {m.name!r} has no value for vertex {p.vertex!r}")
        return m.default
    return _builtin(m.kind, m)(p)


def graph_values(m: MeasureSpec, g: Graph) -> dict:
    """Measure values for every vertex of ``g``."""
    return {v: evaluate(m, Pair(v, g)) for v in g.sorted_vertices}
