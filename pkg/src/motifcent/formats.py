"""Reading and writing graphs, corpora, measure tables, precolorings and representations."""

from __future__ import annotations

import json
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any

from .coloring import Precoloring
from .graph import Corpus, Graph, GraphError, Pair, parse_vertex
from .measures import MeasureSpec
from .synthesis import FamilyAssignment, FilterTable
from .values import format_value

GRAPH_SUFFIXES = (".json", ".txt", ".edges", ".el")


class FormatError(ValueError):
    """Malformed input file; the message names the file and, when known, the line."""


# -- graphs -----------------------------------------------------------------------


def graph_to_json(g: Graph, name: str) -> dict:
    return {
        "name": name,
        "directed": g.directed,
        "vertices": [str(v) for v in g.sorted_vertices],
        "edges": [[str(a), str(b)] for a, b in g.sorted_edges],
    }


def graph_from_json(obj: Any, where: str = "<json>") -> tuple[str, Graph]:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: a graph must be a JSON object")
    missing = [k for k in ("name", "vertices", "edges") if k not in obj]
    if missing:
        raise FormatError(f"{where}: graph object lacks {missing}")
    try:
        vertices = [parse_vertex(str(v)) for v in obj["vertices"]]
        edges = []
        for e in obj["edges"]:
            if len(e) != 2:
                raise FormatError(f"{where}: edge {e!r} must have two endpoints")
            edges.append((parse_vertex(str(e[0])), parse_vertex(str(e[1]))))
        return str(obj["name"]), Graph(vertices, edges, bool(obj.get("directed", False)))
    except GraphError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def parse_edge_list(text: str, name: str, where: str = "<edges>", directed: bool = False) -> tuple[str, Graph]:
    """``u v`` per line declares an edge, a lone token declares a vertex.

    Blank lines and ``#`` comments are skipped; a ``# directed`` comment line
    switches the graph to directed.
    """
    vertices: list = []
    edges: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            if line.lstrip("#").strip().lower() == "directed":
                directed = True
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 1:
            vertices.append(parse_vertex(tokens[0]))
        elif len(tokens) == 2:
            u, w = (parse_vertex(t) for t in tokens)
            vertices.extend((u, w))
            edges.append((u, w))
        else:
            raise FormatError(f"{where}:{lineno}: expected 'u v' or a single vertex, got {raw!r}")
    if not vertices:
        raise FormatError(f"{where}: no vertices declared")
    try:
        return name, Graph(dict.fromkeys(vertices), edges, directed)
    except GraphError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from exc


def _load_json(path: Path) -> Any:
    try:
        return json.loads(_read_text(path), parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}: {exc.msg}") from exc


def read_graph(path: str | Path) -> tuple[str, Graph]:
    path = Path(path)
    if path.suffix == ".json":
        obj = _load_json(path)
        if isinstance(obj, list):
            if len(obj) != 1:
                raise FormatError(f"{path}: expected a single graph, found a list of {len(obj)}")
            obj = obj[0]
        return graph_from_json(obj, str(path))
    return parse_edge_list(_read_text(path), path.stem, str(path))


def read_corpus(path: str | Path) -> Corpus:
    """A JSON array of graphs, a single graph file, or a directory of graph files."""
    path = Path(path)
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.suffix in GRAPH_SUFFIXES)
        return _corpus([read_graph(p) for p in files], str(path))
    if path.suffix == ".json":
        obj = _load_json(path)
        if isinstance(obj, list):
            return _corpus([graph_from_json(o, f"{path}[{i}]") for i, o in enumerate(obj)], str(path))
        return _corpus([graph_from_json(obj, str(path))], str(path))
    return _corpus([read_graph(path)], str(path))


def _corpus(entries: list, where: str) -> Corpus:
    try:
        return Corpus(entries)
    except GraphError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def corpus_to_json(corpus: Corpus) -> list:
    return [graph_to_json(g, name) for name, g in corpus]


# -- measure tables ---------------------------------------------------------------


def _real(value: Any, where: str):
    if isinstance(value, bool):
        raise FormatError(f"{where}: boolean is not a number")
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"{where}: cannot parse {value!r} as a number") from exc
    raise FormatError(f"{where}: expected a number, got {value!r}")


def table_from_json(obj: Any, corpus: Corpus, where: str = "<table>") -> MeasureSpec:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise FormatError(f"{where}: a measure table needs an 'entries' list")
    default = obj.get("default")
    table: dict = {}
    for i, entry in enumerate(obj["entries"]):
        loc = f"{where}: entries[{i}]"
        try:
            g = corpus.graph(str(entry["graph"]))
            p = Pair(parse_vertex(str(entry["vertex"])), g)
        except (KeyError, GraphError) as exc:
            raise FormatError(f"{loc}: {exc}") from exc
        value = _real(entry.get("value"), loc)
        if p in table and table[p] != value:
            raise FormatError(f"{loc}: conflicting values for vertex {p.vertex!r}")
        table[p] = value
    return MeasureSpec.from_table(
        table,
        default=None if default is None else _real(default, f"{where}: default"),
        name=str(obj.get("name", "table")),
    )


def read_table(path: str | Path, corpus: Corpus) -> MeasureSpec:
    path = Path(path)
    return table_from_json(_load_json(path), corpus, str(path))


def decimal_string(x) -> str:
    """Exact decimal when the number has one, else ``p/q`` (floats keep their repr)."""
    if isinstance(x, Fraction) and x.denominator != 1:
        den = x.denominator
        for prime in (2, 5):
            while den % prime == 0:
                den //= prime
        if den == 1:
            with localcontext() as ctx:
                ctx.prec = 200
                return format(Decimal(x.numerator) / Decimal(x.denominator), "f")
    return format_value(x)


def table_to_json(m: MeasureSpec, corpus: Corpus) -> dict:
    entries = []
    for name, p in corpus.pairs():
        if p in m.table:
            entries.append({"graph": name, "vertex": str(p.vertex), "value": decimal_string(m.table[p])})
    return {
        "name": m.name,
        "default": None if m.default is None else decimal_string(m.default),
        "entries": entries,
    }


# -- precolorings and representations -------------------------------------------------


def precoloring_to_json(pc: Precoloring, corpus: Corpus) -> list:
    out = []
    for name, p in corpus.pairs():
        if p in pc.assignment:
            out.append({"graph": name, "vertex": str(p.vertex), "color": pc[p]})
    return out


def precoloring_from_json(obj: Any, corpus: Corpus, where: str = "<precoloring>") -> Precoloring:
    if not isinstance(obj, list):
        raise FormatError(f"{where}: a precoloring is a JSON list")
    assignment = {}
    for i, entry in enumerate(obj):
        try:
            p = Pair(parse_vertex(str(entry["vertex"])), corpus.graph(str(entry["graph"])))
            assignment[p] = int(entry["color"])
        except (KeyError, GraphError, TypeError, ValueError) as exc:
            raise FormatError(f"{where}[{i}]: {exc}") from exc
    return Precoloring(assignment)


def representation_to_json(fam: FamilyAssignment, f: FilterTable, corpus: Corpus) -> dict:
    family = []
    witnesses = []
    for name, p in corpus.pairs():
        if p not in fam.sizes:
            continue
        family.append({"graph": name, "vertex": str(p.vertex), "size": fam.sizes[p]})
        if fam.witnesses is not None and p in fam.witnesses:
            witnesses.append({
                "graph": name,
                "vertex": str(p.vertex),
                "subgraphs": [graph_to_json(s, f"{name}/{p.vertex}/{i}")
                              for i, s in enumerate(fam.witnesses[p])],
            })
    out: dict = {
        "family": family,
        "filter": [{"size": k, "value": decimal_string(f.entries[k])} for k in sorted(f.entries)],
        "monotone": f.monotone,
    }
    if fam.witnesses is not None:
        out["witnesses"] = witnesses
    return out


def representation_from_json(obj: Any, corpus: Corpus,
                             where: str = "<representation>") -> tuple[FamilyAssignment, FilterTable]:
    try:
        sizes = {
            Pair(parse_vertex(str(e["vertex"])), corpus.graph(str(e["graph"]))): int(e["size"])
            for e in obj["family"]
        }
        entries = {int(e["size"]): _real(e["value"], where) for e in obj["filter"]}
        return FamilyAssignment(sizes), FilterTable(entries, bool(obj.get("monotone", False)))
    except (KeyError, TypeError, GraphError) as exc:
        raise FormatError(f"{where}: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
