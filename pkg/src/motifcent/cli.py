"""Command-line front end.

Exit codes: 0 for success or a property that holds, 1 for a violated
property, a failed verification or an uncolorable pair set, 2 for usage and
input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import formats
from .coloring import DEFAULT_BUDGET, PrecoloringError, search_precoloring
from .graph import Corpus, GraphError, Pair, make_special, parse_vertex
from .measures import BUILTIN_KINDS, DEFAULT_ALPHA, DEFAULT_TOLERANCE, MeasureError, MeasureSpec, graph_values
from .reproduce import SUITES, report_lines, run_suite
from .subgraphs import CAP_ENV_VAR, CapExceeded, count_connected_subgraphs
from .synthesis import (
    SynthesisError,
    materialize_witnesses,
    synthesize_connected_ranking_representation,
    synthesize_filter_from_precoloring,
    synthesize_monotonic_ranking_representation,
    synthesize_monotonic_representation,
    synthesize_value_representation,
    verify_representation,
)
from .values import DEFAULT_EPSILON, PROPERTIES, check_property, value_table_csv

EXIT_OK, EXIT_VIOLATED, EXIT_ERROR = 0, 1, 2
MEASURE_ALIASES = {"lpr": "pagerank_local", "all-subgraphs": "all_subgraphs", "cross-clique": "cross_clique"}
SYNTHESIS_MODES = ("values", "monotonic", "connected-ranking", "monotonic-ranking", "coloring")
GRAPH_KINDS = ("line", "star", "h", "ghat3", "ghat4", "tee")


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="single graph file (JSON or edge list)")
    src.add_argument("--corpus", help="JSON array of graphs, or a directory of graph files")


def _add_measure(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--measure", required=required,
                   help=f"one of {', '.join(BUILTIN_KINDS)}, lpr, or table")
    p.add_argument("--table", help="measure table file, used with --measure table")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA, help="PageRank damping factor")
    p.add_argument("--tolerance", type=_positive_float, default=DEFAULT_TOLERANCE,
                   help="power-iteration tolerance")
    p.add_argument("--epsilon", type=_positive_float, default=DEFAULT_EPSILON,
                   help="two float values closer than this count as equal")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motifcent",
                                     description="Subgraph-motif expressiveness of centrality measures.")
    parser.add_argument("--cap", type=_positive_int,
                        help=f"connected-subgraph counting cap (default from {CAP_ENV_VAR} or 2^20)")
    parser.add_argument("--jobs", type=_positive_int, default=1, help="worker processes for evaluation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="measure values for every (or one) vertex")
    _add_input(p)
    _add_measure(p)
    p.add_argument("--vertex", help="only report this vertex")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("check", help="check a bounded-value property on a corpus")
    _add_input(p)
    _add_measure(p)
    p.add_argument("--property", choices=PROPERTIES, default="bvp")
    p.add_argument("--nmax", type=_positive_int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="csv prints the Val/BVal table instead of the report")

    p = sub.add_parser("synthesize", help="build and verify a subgraph-family representation")
    _add_input(p)
    _add_measure(p)
    p.add_argument("--mode", choices=SYNTHESIS_MODES, default="values")
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET, help="coloring search budget")
    p.add_argument("--witnesses", action="store_true", help="attach the member subgraphs of each family")

    p = sub.add_parser("color", help="search for a valid precoloring of all corpus pairs")
    _add_input(p)
    _add_measure(p)
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET)
    p.add_argument("--pairwise-only", action="store_true",
                   help="only require injectivity and pairwise consistency, not a realizable order")

    p = sub.add_parser("gen", help="print a named graph")
    p.add_argument("--kind", choices=GRAPH_KINDS, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--directed", action="store_true")

    p = sub.add_parser("count", help="number of connected subgraphs containing a vertex")
    p.add_argument("--graph", required=True)
    p.add_argument("--vertex", required=True)

    p = sub.add_parser("reproduce", help="run reproduction suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"],
                   help="suite to run; repeat for several (default: all)")
    return parser


# -- helpers ------------------------------------------------------------------------


def _load_corpus(args) -> Corpus:
    if args.graph is not None:
        name, g = formats.read_graph(args.graph)
        return Corpus([(name, g)])
    return formats.read_corpus(args.corpus)


def _load_measure(args, corpus: Corpus) -> MeasureSpec:
    kind = MEASURE_ALIASES.get(args.measure, args.measure)
    if kind == "table":
        if not args.table:
            raise UsageError("--measure table needs --table FILE")
        return formats.read_table(args.table, corpus)
    if args.table:
        raise UsageError("--table only applies to --measure table")
    if kind not in BUILTIN_KINDS:
        raise UsageError(f"unknown measure {args.measure!r}")
    return MeasureSpec(kind=kind, name=kind, alpha=args.alpha, tolerance=args.tolerance)


def _graph_rows(job) -> list:
    m, name, g = job
    return [(name, v, value) for v, value in graph_values(m, g).items()]


def _all_rows(m: MeasureSpec, corpus: Corpus, jobs: int) -> list:
    work = [(m, name, g) for name, g in corpus]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_graph_rows, work))
    else:
        chunks = [_graph_rows(w) for w in work]
    return [row for chunk in chunks for row in chunk]


def _emit(out, obj) -> None:
    out.write(formats.dumps(obj))


# -- commands -------------------------------------------------------------------------


def cmd_eval(args, out) -> int:
    corpus = _load_corpus(args)
    m = _load_measure(args, corpus)
    rows = _all_rows(m, corpus, args.jobs)
    if args.vertex is not None:
        wanted = parse_vertex(args.vertex)
        rows = [r for r in rows if r[1] == wanted]
        if not rows:
            raise UsageError(f"vertex {args.vertex!r} does not occur in the input")
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["graph", "vertex", "value"])
        for name, v, value in rows:
            writer.writerow([name, v, formats.decimal_string(value)])
        out.write(buf.getvalue())
    else:
        _emit(out, [{"graph": name, "vertex": str(v), "value": formats.decimal_string(value)}
                    for name, v, value in rows])
    return EXIT_OK


def cmd_check(args, out) -> int:
    corpus = _load_corpus(args)
    m = _load_measure(args, corpus)
    report = check_property(m, corpus, args.property, args.nmax, args.epsilon)
    if args.format == "csv":
        out.write(value_table_csv(m, corpus, args.nmax, epsilon=args.epsilon))
    else:
        _emit(out, report.to_json())
    return EXIT_OK if report.holds else EXIT_VIOLATED


def cmd_synthesize(args, out) -> int:
    corpus = _load_corpus(args)
    m = _load_measure(args, corpus)
    verify_mode = "values" if args.mode in ("values", "monotonic") else "ranking"
    try:
        if args.mode == "values":
            fam, f = synthesize_value_representation(m, corpus, args.epsilon)
        elif args.mode == "monotonic":
            fam, f = synthesize_monotonic_representation(m, corpus, args.epsilon)
        elif args.mode == "connected-ranking":
            fam, f = synthesize_connected_ranking_representation(m, corpus, args.epsilon)
        elif args.mode == "monotonic-ranking":
            fam, f = synthesize_monotonic_ranking_representation(m, corpus, args.epsilon)
        else:
            result = search_precoloring(m, [p for _, p in corpus.distinct_pairs()], args.budget,
                                        epsilon=args.epsilon)
            if not result.colored:
                _emit(out, {"error": f"no precoloring: {result.status}", "nodes": result.nodes})
                return EXIT_VIOLATED
            fam, f = synthesize_filter_from_precoloring(result.precoloring, m, args.epsilon)
    except SynthesisError as exc:
        _emit(out, {"error": str(exc), "report": None if exc.report is None else exc.report.to_json()})
        return EXIT_VIOLATED
    if args.witnesses:
        fam = materialize_witnesses(fam)
    report = verify_representation(m, fam, f, corpus, verify_mode, args.epsilon)
    payload = formats.representation_to_json(fam, f, corpus)
    payload["verification"] = {
        "mode": report.mode,
        "ok": report.ok,
        "checked": report.checked,
        "mismatches": len(report.mismatches),
    }
    _emit(out, payload)
    return EXIT_OK if report.ok else EXIT_VIOLATED


def cmd_color(args, out) -> int:
    corpus = _load_corpus(args)
    m = _load_measure(args, corpus)
    pairs = [p for _, p in corpus.distinct_pairs()]
    result = search_precoloring(m, pairs, args.budget, realizable=not args.pairwise_only, epsilon=args.epsilon)
    payload = {"status": result.status, "nodes": result.nodes}
    if result.colored:
        payload["precoloring"] = formats.precoloring_to_json(result.precoloring, corpus)
    _emit(out, payload)
    return EXIT_OK if result.colored else EXIT_VIOLATED


def cmd_gen(args, out) -> int:
    g = make_special(args.kind, args.n, args.directed)
    name = args.kind if args.kind in ("ghat3", "ghat4", "tee") else f"{args.kind}{args.n}"
    _emit(out, formats.graph_to_json(g, name))
    return EXIT_OK


def cmd_count(args, out) -> int:
    name, g = formats.read_graph(args.graph)
    p = Pair(parse_vertex(args.vertex), g)
    try:
        payload = {"graph": name, "vertex": str(p.vertex), "count": count_connected_subgraphs(p)}
    except CapExceeded as exc:
        payload = {"graph": name, "vertex": str(p.vertex), "count": None,
                   "exceeds_cap": exc.cap, "lower_bound": exc.lower_bound}
    _emit(out, payload)
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    names = args.suite or ["all"]
    if "all" in names:
        names = list(SUITES)
    failed = 0
    for name in names:
        result = run_suite(name)
        for text in report_lines(result):
            out.write(text + "\n")
        failed += not result.passed
    out.write(f"{len(names) - failed}/{len(names)} suites passed\n")
    return EXIT_OK if failed == 0 else EXIT_VIOLATED


COMMANDS = {
    "eval": cmd_eval,
    "check": cmd_check,
    "synthesize": cmd_synthesize,
    "color": cmd_color,
    "gen": cmd_gen,
    "count": cmd_count,
    "reproduce": cmd_reproduce,
}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    saved_cap = os.environ.get(CAP_ENV_VAR)
    if args.cap is not None:
        os.environ[CAP_ENV_VAR] = str(args.cap)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, formats.FormatError, GraphError, MeasureError, PrecoloringError,
            CapExceeded, ValueError) as exc:
        err.write(f"motifcent: error: {exc}\n")
        return EXIT_ERROR
    finally:
        if saved_cap is None:
            os.environ.pop(CAP_ENV_VAR, None)
        else:
            os.environ[CAP_ENV_VAR] = saved_cap


if __name__ == "__main__":
    sys.exit(main())
