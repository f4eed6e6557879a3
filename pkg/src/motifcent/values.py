"""Value sets Val^n / BVal^n and the four bounded-value checks.

Distinctness of values is decided by :func:`same_value`: exact numbers
compare exactly, and as soon as a float is involved two values count as equal
when they differ by at most ``epsilon``.  Every verdict is relative to the
finite corpus it was computed on.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph import Corpus, Pair
from .measures import MeasureSpec, evaluate
from .subgraphs import bounded_count

DEFAULT_EPSILON = 1e-9
GLOBAL = "global"
PROPERTIES = ("bvp", "monotonic_bvp", "nonuniform_bvp", "nonuniform_monotonic_bvp")
CAVEAT = "corpus-restricted"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def same_value(a, b, epsilon: float = DEFAULT_EPSILON) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(float(a) - float(b)) <= epsilon


def compare(a, b, epsilon: float = DEFAULT_EPSILON) -> int:
    """-1, 0 or 1 under the epsilon equality contract."""
    if same_value(a, b, epsilon):
        return 0
    return -1 if a < b else 1


def group_values(values: Iterable, epsilon: float = DEFAULT_EPSILON) -> list:
    """Sorted distinct representatives; near-equal floats chain into one group."""
    out: list = []
    for x in sorted(values):
        if out and same_value(out[-1], x, epsilon):
            continue
        out.append(x)
    return out


def contains(values: list, x, epsilon: float = DEFAULT_EPSILON) -> bool:
    return any(same_value(v, x, epsilon) for v in values)


def format_value(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(x)


@dataclass(frozen=True)
class ValueSet:
    scope: str
    threshold_n: int
    values: tuple

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Witness:
    graph: str
    vertex: object
    value: object
    subgraph_count: int | None

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "vertex": str(self.vertex),
            "value": format_value(self.value),
            "subgraph_count": self.subgraph_count,
        }


@dataclass(frozen=True)
class Violation:
    n: int
    scope: str
    val_count: int
    bval_count: int
    bound: int
    val_witnesses: tuple
    bval_witnesses: tuple

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "scope": self.scope,
            "val_count": self.val_count,
            "bval_count": self.bval_count,
            "bound": self.bound,
            "val_witnesses": [w.to_json() for w in self.val_witnesses],
            "bval_witnesses": [w.to_json() for w in self.bval_witnesses],
        }


@dataclass(frozen=True)
class PropertyReport:
    property: str
    holds: bool
    n_max: int
    first_violation: Violation | None = None
    caveat: str = CAVEAT

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "holds": self.holds,
            "n_max": self.n_max,
            "caveat": self.caveat,
            "first_violation": None if self.first_violation is None else self.first_violation.to_json(),
        }


@dataclass
class _Row:
    graph: str
    pair: Pair
    value: object
    count: int | None  # None means "larger than the bound in use"


def _rows(m: MeasureSpec, corpus: Corpus, bound: int, scope: str) -> list[_Row]:
    pairs = corpus.distinct_pairs() if scope == GLOBAL else corpus.pairs(scope)
    if scope != GLOBAL and not pairs:
        corpus.graph(scope)  # raises for unknown names
    return [_Row(name, p, evaluate(m, p), bounded_count(p, bound)) for name, p in pairs]


def _val(rows: list[_Row], n: int, epsilon: float) -> list:
    return group_values((r.value for r in rows if r.count is not None and r.count <= n), epsilon)


def _bval(rows: list[_Row], val: list, epsilon: float) -> list:
    if not val:
        return []
    top = val[-1]
    below = (r.value for r in rows if compare(r.value, top, epsilon) < 0)
    return [x for x in group_values(below, epsilon) if not contains(val, x, epsilon)]


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")


def val_set(m: MeasureSpec, corpus: Corpus, n: int, scope: str = GLOBAL,
            epsilon: float = DEFAULT_EPSILON) -> ValueSet:
    """{C(v,G) : |A(v,G)| <= n} over the corpus or over one named graph."""
    _check_n(n)
    return ValueSet(scope, n, tuple(_val(_rows(m, corpus, n, scope), n, epsilon)))


def bval_set(m: MeasureSpec, corpus: Corpus, n: int, scope: str = GLOBAL,
             epsilon: float = DEFAULT_EPSILON) -> ValueSet:
    """Values attained in scope, missing from Val^n, strictly below max Val^n."""
    _check_n(n)
    rows = _rows(m, corpus, n, scope)
    return ValueSet(scope, n, tuple(_bval(rows, _val(rows, n, epsilon), epsilon)))


def _witnesses(rows: list[_Row], values: list, n: int | None, epsilon: float) -> tuple:
    out = []
    for x in values:
        for r in rows:
            eligible = n is None or (r.count is not None and r.count <= n)
            if eligible and same_value(r.value, x, epsilon):
                out.append(Witness(r.graph, r.pair.vertex, r.value, r.count))
                break
    return tuple(out)


def check_property(m: MeasureSpec, corpus: Corpus, prop: str, n_max: int,
                   epsilon: float = DEFAULT_EPSILON) -> PropertyReport:
    """Check |Val^n| <= n + 1 (minus |BVal^n| for the monotonic variants) for n in 1..n_max."""
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    _check_n(n_max)
    monotonic = "monotonic" in prop
    scopes = corpus.names if prop.startswith("nonuniform") else [GLOBAL]
    rows_by_scope = {s: _rows(m, corpus, n_max, s) for s in scopes}
    for n in range(1, n_max + 1):
        for scope in scopes:
            rows = rows_by_scope[scope]
            val = _val(rows, n, epsilon)
            bval = _bval(rows, val, epsilon) if monotonic else []
            if len(val) + len(bval) > n + 1:
                violation = Violation(
                    n=n, scope=scope, val_count=len(val), bval_count=len(bval), bound=n + 1,
                    val_witnesses=_witnesses(rows, val, n, epsilon),
                    bval_witnesses=_witnesses(rows, bval, None, epsilon),
                )
                return PropertyReport(prop, False, n_max, violation)
    return PropertyReport(prop, True, n_max)


def distinct_value_count(m: MeasureSpec, corpus: Corpus, scope: str = GLOBAL,
                         epsilon: float = DEFAULT_EPSILON) -> int:
    pairs = corpus.distinct_pairs() if scope == GLOBAL else corpus.pairs(scope)
    return len(group_values((evaluate(m, p) for _, p in pairs), epsilon))


def value_table_csv(m: MeasureSpec, corpus: Corpus, n_max: int, scope: str = GLOBAL,
                    epsilon: float = DEFAULT_EPSILON) -> str:
    """CSV rows (scope, kind, n, values) for Val^n and BVal^n, n = 1..n_max."""
    _check_n(n_max)
    rows = _rows(m, corpus, n_max, scope)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scope", "set", "n", "values"])
    for n in range(1, n_max + 1):
        val = _val(rows, n, epsilon)
        bval = _bval(rows, val, epsilon)
        writer.writerow([scope, "val", n, " ".join(format_value(x) for x in val)])
        writer.writerow([scope, "bval", n, " ".join(format_value(x) for x in bval)])
    return buf.getvalue()
