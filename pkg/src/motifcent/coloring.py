"""Precolorings of finite pair sets and a backtracking search for valid ones.

Besides the two defining conditions (injectivity inside each graph and the
pairwise no-reversal condition across graphs) the module offers a stronger
*realizability* test: the colour relation must admit a filter ``f`` that
reproduces every per-graph ranking.  That needs equal values mapped to equal
reals and the strict colour relation to be acyclic, which the pairwise
conditions alone do not guarantee once three or more graphs interact.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import Pair
from .measures import MeasureSpec, evaluate
from .subgraphs import bounded_count, count_connected_subgraphs
from .values import DEFAULT_EPSILON, compare

DEFAULT_BUDGET = 10 ** 7


class PrecoloringError(ValueError):
    pass


@dataclass(frozen=True)
class Precoloring:
    assignment: Mapping = field(hash=False)

    def __post_init__(self) -> None:
        for p, c in self.assignment.items():
            if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                raise PrecoloringError(f"color of {p.vertex!r} must be a natural number, got {c!r}")

    def __getitem__(self, p: Pair) -> int:
        return self.assignment[p]

    def __len__(self) -> int:
        return len(self.assignment)

    def pairs(self) -> list[Pair]:
        return sorted(self.assignment, key=Pair.sort_key)

    def validate_bounds(self) -> None:
        """Every color must lie in 0..|A(v,G)|."""
        for p in self.pairs():
            c = self.assignment[p]
            size = bounded_count(p, c - 1)
            if size is not None:
                raise PrecoloringError(f"color {c} of {p.vertex!r} exceeds |A(v,G)| = {size}")


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def _by_graph(pairs: Iterable[Pair]) -> dict:
    groups: dict = {}
    for p in sorted(pairs, key=Pair.sort_key):
        groups.setdefault(p.graph, []).append(p)
    return groups


def _strict_edges(pc: Precoloring, m: MeasureSpec, epsilon: float) -> list[tuple]:
    """(color below, color above, pair below, pair above) for same-graph strict inequalities."""
    out = []
    for members in _by_graph(pc.assignment).values():
        vals = {p: evaluate(m, p) for p in members}
        for p in members:
            for q in members:
                if compare(vals[p], vals[q], epsilon) < 0:
                    out.append((pc[p], pc[q], p, q))
    return out


def check_injective(pc: Precoloring, m: MeasureSpec, epsilon: float = DEFAULT_EPSILON) -> CheckResult:
    """Different values inside one graph must get different colors."""
    if not len(pc):
        raise PrecoloringError("empty precoloring")
    for lo, hi, p, q in _strict_edges(pc, m, epsilon):
        if lo == hi:
            return CheckResult(False, (p, q))
    return CheckResult(True)


def check_consistent(pc: Precoloring, m: MeasureSpec, epsilon: float = DEFAULT_EPSILON) -> CheckResult:
    """No color pair may be ordered one way in one graph and reversed in another.

    The witness is ``(p1, p2, q1, q2)`` with C(p1) < C(p2), C(q1) < C(q2),
    pc(p1) = pc(q2) and pc(p2) = pc(q1).
    """
    if not len(pc):
        raise PrecoloringError("empty precoloring")
    seen: dict = {}
    for lo, hi, p, q in _strict_edges(pc, m, epsilon):
        seen.setdefault((lo, hi), (p, q))
    for (lo, hi), (p, q) in seen.items():
        reverse = seen.get((hi, lo))
        if reverse is not None:
            return CheckResult(False, (p, q) + reverse)
    return CheckResult(True)


class _ColorOrder:
    """Union-find over colors for equalities plus a strict relation between classes."""

    def __init__(self) -> None:
        self.parent: dict = {}
        self.strict: set = set()

    def find(self, c: int) -> int:
        self.parent.setdefault(c, c)
        while self.parent[c] != c:
            c = self.parent[c]
        return c

    def classes(self, colors: Iterable[int]) -> dict:
        return {c: self.find(c) for c in colors}

    def successors(self) -> dict:
        out: dict = {}
        for a, b in self.strict:
            out.setdefault(self.find(a), set()).add(self.find(b))
        return out

    def cycle(self) -> list | None:
        succ = self.successors()
        for a, bs in succ.items():
            if a in bs:
                return [a, a]
        state: dict = {}
        stack: list = []

        def visit(node) -> list | None:
            state[node] = 1
            stack.append(node)
            for nxt in sorted(succ.get(node, ())):
                if state.get(nxt) == 1:
                    return stack[stack.index(nxt):] + [nxt]
                if nxt not in state:
                    found = visit(nxt)
                    if found:
                        return found
            stack.pop()
            state[node] = 2
            return None

        for node in sorted(succ):
            if node not in state:
                found = visit(node)
                if found:
                    return found
        return None


def _order_for(pc: Precoloring, m: MeasureSpec, epsilon: float) -> _ColorOrder:
    order = _ColorOrder()
    for members in _by_graph(pc.assignment).values():
        vals = {p: evaluate(m, p) for p in members}
        for i, p in enumerate(members):
            order.find(pc[p])
            for q in members[i + 1:]:
                rel = compare(vals[p], vals[q], epsilon)
                if rel == 0:
                    ra, rb = order.find(pc[p]), order.find(pc[q])
                    if ra != rb:
                        order.parent[max(ra, rb)] = min(ra, rb)
                elif rel < 0:
                    order.strict.add((pc[p], pc[q]))
                else:
                    order.strict.add((pc[q], pc[p]))
    return order


def check_realizable(pc: Precoloring, m: MeasureSpec, epsilon: float = DEFAULT_EPSILON) -> CheckResult:
    """A filter reproducing every per-graph ranking exists for this coloring."""
    cyc = _order_for(pc, m, epsilon).cycle()
    return CheckResult(True) if cyc is None else CheckResult(False, tuple(cyc))


def color_total_order(pc: Precoloring, m: MeasureSpec, epsilon: float = DEFAULT_EPSILON) -> list[list[int]]:
    """Groups of used colors in a linear extension of the color relation.

    Ties between incomparable groups go to the smallest color first, so the
    result is deterministic.
    """
    order = _order_for(pc, m, epsilon)
    if order.cycle() is not None:
        raise PrecoloringError("color relation is cyclic")
    colors = sorted(set(pc.assignment.values()))
    cls = order.classes(colors)
    groups: dict = {}
    for c in colors:
        groups.setdefault(cls[c], []).append(c)
    succ = order.successors()
    indeg = {g: 0 for g in groups}
    for a, bs in succ.items():
        for b in bs:
            indeg[b] += 1
    ready = [g for g, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    out = []
    while ready:
        g = heapq.heappop(ready)
        out.append(groups[g])
        for b in sorted(succ.get(g, ())):
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(ready, b)
    return out


@dataclass(frozen=True)
class SearchResult:
    status: str  # "colored", "uncolorable" or "budget_exhausted"
    precoloring: Precoloring | None
    nodes: int

    @property
    def colored(self) -> bool:
        return self.status == "colored"


def search_precoloring(m: MeasureSpec, pairs: Iterable[Pair], budget: int = DEFAULT_BUDGET,
                       realizable: bool = True, epsilon: float = DEFAULT_EPSILON,
                       cap: int | None = None) -> SearchResult:
    """Backtracking search for an injective, consistent precoloring.

    Pairs are visited in canonical order and colors tried in ascending order.
    With ``realizable=True`` (the default) partial assignments must also pass
    :func:`check_realizable`, which is what turning a coloring into a filter
    requires.  ``uncolorable`` is only reported after the whole tree was seen.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    todo = sorted(set(pairs), key=Pair.sort_key)
    if not todo:
        raise PrecoloringError("nothing to color")
    values = {p: evaluate(m, p) for p in todo}
    # Compressing the used colors order-preservingly onto 0..k-1 keeps every
    # constraint and bound intact, so colors >= len(todo) never need a visit.
    ceiling = len(todo) - 1
    limits = {}
    for p in todo:
        size = bounded_count(p, ceiling) if cap is None else min(count_connected_subgraphs(p, cap), ceiling)
        limits[p] = ceiling if size is None else min(size, ceiling)
    assigned: dict = {}
    nodes = 0

    def acceptable(p: Pair, c: int) -> bool:
        for q, d in assigned.items():
            if q.graph == p.graph and d == c and compare(values[p], values[q], epsilon) != 0:
                return False
        assigned[p] = c
        trial = Precoloring(assigned)
        ok = bool(check_consistent(trial, m, epsilon))
        if ok and realizable:
            ok = bool(check_realizable(trial, m, epsilon))
        del assigned[p]
        return ok

    class _Budget(Exception):
        pass

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == len(todo):
            return True
        p = todo[i]
        for c in range(limits[p] + 1):
            nodes += 1
            if nodes > budget:
                raise _Budget
            if acceptable(p, c):
                assigned[p] = c
                if extend(i + 1):
                    return True
                del assigned[p]
        return False

    try:
        found = extend(0)
    except _Budget:
        return SearchResult("budget_exhausted", None, nodes)
    if found:
        return SearchResult("colored", Precoloring(dict(assigned)), nodes)
    return SearchResult("uncolorable", None, nodes)
