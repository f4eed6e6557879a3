"""Connected subgraphs containing a vertex, and cliques through a vertex.

Counting walks the connected vertex sets around the anchor and, for each set,
adds the number of connected spanning edge subsets of the induced subgraph.
Materialisation emits members block by block in canonical order (vertex
count, edge count, vertex list, edge list), so a truncated result is always a
prefix of the full canonical listing.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, Pair

COUNT_CAP = 2 ** 20
ENUMERATION_CAP = 2 ** 14
CAP_ENV_VAR = "MOTIFCENT_CAP"


class CapExceeded(RuntimeError):
    """|A(v,G)| is larger than the cap; ``lower_bound`` is a certified lower bound."""

    def __init__(self, pair: Pair, cap: int, lower_bound: int):
        self.pair = pair
        self.cap = cap
        self.lower_bound = lower_bound
        super().__init__(
            f"connected subgraphs around {pair.vertex!r} exceed the cap {cap} "
            f"(at least {lower_bound})"
        )


def default_count_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return COUNT_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"{CAP_ENV_VAR} must be positive, got {raw!r}")
    return cap


@dataclass(frozen=True)
class SubgraphSet:
    anchor: Pair
    members: tuple
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.members)


class _Bitgraph:
    """Bitmask view of the underlying undirected multigraph."""

    def __init__(self, g: Graph):
        self.graph = g
        self.vertices = g.sorted_vertices
        idx = g.index
        self.n = len(self.vertices)
        self.adj = [0] * self.n
        self.edges = g.sorted_edges
        self.edge_ends = []
        for a, b in self.edges:
            i, j = idx[a], idx[b]
            self.adj[i] |= 1 << j
            self.adj[j] |= 1 << i
            self.edge_ends.append((i, j))
        self.edge_masks = [(1 << i) | (1 << j) for i, j in self.edge_ends]
        self._spanning: dict[int, int] = {}

    def inside(self, mask: int) -> list[int]:
        return [k for k, em in enumerate(self.edge_masks) if em & mask == em]

    def connected(self, mask: int) -> bool:
        if not mask:
            return False
        seen = mask & -mask
        frontier = seen
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb = self.adj[low.bit_length() - 1] & mask & ~seen
            seen |= nb
            frontier |= nb
        return seen == mask

    def neighbourhood(self, mask: int) -> int:
        out = 0
        m = mask
        while m:
            low = m & -m
            m ^= low
            out |= self.adj[low.bit_length() - 1]
        return out & ~mask

    def spanning_connected(self, mask: int) -> int:
        """Number of edge subsets of G[mask] that connect all of ``mask``."""
        cached = self._spanning.get(mask)
        if cached is not None:
            return cached
        if not self.connected(mask):
            result = 0
        else:
            size = bin(mask).count("1")
            inner = self.inside(mask)
            if len(inner) == size - 1:
                result = 1
            elif len(inner) <= size + 3:
                result = self._by_edge_subsets(mask, inner, size)
            else:
                result = self._by_recurrence(mask, len(inner))
        self._spanning[mask] = result
        return result

    def _by_edge_subsets(self, mask: int, inner: list[int], size: int) -> int:
        total = 0
        for k in range(size - 1, len(inner) + 1):
            for combo in itertools.combinations(inner, k):
                if self._spans(mask, combo):
                    total += 1
        return total

    def _spans(self, mask: int, combo) -> bool:
        parent = {}

        def find(x: int) -> int:
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        pieces = bin(mask).count("1")
        for k in combo:
            i, j = self.edge_ends[k]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                pieces -= 1
        return pieces == 1

    def _by_recurrence(self, mask: int, edge_count: int) -> int:
        # connected(T) = 2^e(T) - sum over proper U containing the lowest vertex
        # of connected(U) * 2^e(T \ U)
        root = mask & -mask
        rest = mask ^ root
        total = 1 << edge_count
        sub = rest
        while True:
            u = sub | root
            if u != mask:
                c = self.spanning_connected(u)
                if c:
                    total -= c << len(self.inside(mask & ~u))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        return total

    def connected_sets_by_size(self, root: int, stop_after: int | None = None):
        """Yield layers of connected vertex masks containing ``root``, by size."""
        layer = {1 << root}
        produced = 0
        while layer:
            yield sorted(layer, key=self._mask_order)
            produced += len(layer)
            if stop_after is not None and produced > stop_after:
                return
            nxt = set()
            for m in layer:
                nb = self.neighbourhood(m)
                while nb:
                    low = nb & -nb
                    nb ^= low
                    nxt.add(m | low)
            layer = nxt

    def _mask_order(self, mask: int) -> tuple:
        return tuple(i for i in range(self.n) if mask >> i & 1)

    def subgraph(self, mask: int, edge_ids) -> Graph:
        vs = [self.vertices[i] for i in range(self.n) if mask >> i & 1]
        return Graph(vs, (self.edges[k] for k in edge_ids), self.graph.directed)


@lru_cache(maxsize=512)
def _bitgraph(g: Graph) -> _Bitgraph:
    return _Bitgraph(g)


@lru_cache(maxsize=65536)
def _count(g: Graph, v, cap: int) -> tuple[bool, int]:
    bg = _bitgraph(g)
    total = 0
    for layer in bg.connected_sets_by_size(g.index[v], stop_after=cap):
        for mask in layer:
            total += bg.spanning_connected(mask)
            if total > cap:
                return False, total
    return True, total


def count_connected_subgraphs(p: Pair, cap: int | None = None) -> int:
    """Exact |A(v,G)|, or :class:`CapExceeded` once the count passes ``cap``."""
    cap = default_count_cap() if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be at least 1")
    exact, total = _count(p.graph, p.vertex, cap)
    if not exact:
        raise CapExceeded(p, cap, total)
    return total


def bounded_count(p: Pair, bound: int) -> int | None:
    """|A(v,G)| if it is at most ``bound``, otherwise None."""
    if bound < 1:
        return None  # ({v}, {}) alone already makes the count 1
    exact, total = _count(p.graph, p.vertex, bound)
    return total if exact else None


def enumerate_connected_subgraphs(p: Pair, cap: int = ENUMERATION_CAP) -> SubgraphSet:
    """Members of A(v,G) in canonical order, truncated to ``cap`` members."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    bg = _bitgraph(p.graph)
    members: list[Graph] = []
    for layer in bg.connected_sets_by_size(p.graph.index[p.vertex]):
        size = bin(layer[0]).count("1")
        inner = {m: bg.inside(m) for m in layer}
        top = max(len(e) for e in inner.values())
        for k in range(size - 1, top + 1):
            for mask in layer:
                if len(inner[mask]) < k:
                    continue
                for combo in itertools.combinations(inner[mask], k):
                    if not bg._spans(mask, combo):
                        continue
                    if len(members) == cap:
                        return SubgraphSet(p, tuple(members), truncated=True)
                    members.append(bg.subgraph(mask, combo))
    return SubgraphSet(p, tuple(members), truncated=False)


def enumerate_cliques_containing(p: Pair) -> SubgraphSet:
    """Induced complete subgraphs containing the anchor vertex."""
    g, v = p.graph, p.vertex
    nbrs = [u for u in g.sorted_vertices if u in g.neighbors[v]]
    found: list[Graph] = []

    def grow(chosen: list, candidates: list) -> None:
        found.append(_induced(g, chosen))
        for i, u in enumerate(candidates):
            grow(chosen + [u], [w for w in candidates[i + 1:] if w in g.neighbors[u]])

    grow([v], nbrs)
    found.sort(key=Graph.canonical_key)
    return SubgraphSet(p, tuple(found), truncated=False)


def _induced(g: Graph, vs: list) -> Graph:
    keep = set(vs)
    return Graph(keep, (e for e in g.edges if e[0] in keep and e[1] in keep), g.directed)
