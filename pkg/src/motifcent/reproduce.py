"""Self-contained reproduction suites for the expressiveness results.

Every suite builds its own graphs and measures, runs the library on them and
returns a list of named checks.  ``run_suites`` prints one ``PASS``/``FAIL``
line per check; the CLI turns any failure into a non-zero exit code.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .coloring import Precoloring, search_precoloring
from .counterexamples import builtin_counterexample
from .graph import Corpus, Graph, Pair, disjoint_union, make_special
from .measures import MeasureSpec, evaluate
from .subgraphs import count_connected_subgraphs
from .synthesis import (
    SynthesisError,
    stress_representation,
    synthesize_connected_ranking_representation,
    synthesize_filter_from_precoloring,
    synthesize_monotonic_representation,
    synthesize_value_representation,
    verify_representation,
)
from .values import bval_set, check_property, val_set

EIGENVECTOR_DIGITS = 1e-3


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self, suite: str) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status} {suite}: {self.name}{tail}"


@dataclass
class SuiteResult:
    suite: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)


# -- corpus builders ---------------------------------------------------------------


def line(n: int, directed: bool = False) -> Graph:
    return make_special("line", n, directed)


def lines(ns, directed: bool = False, prefix: str = "L") -> list:
    return [(f"{prefix}{n}", line(n, directed)) for n in ns]


def h_graphs(ns, directed: bool = False) -> list:
    return [(f"H{n}", make_special("h", n, directed)) for n in ns]


def union_corpus(entries: list, name: str = "union") -> Corpus:
    return Corpus([(name, disjoint_union([g for _, g in entries]))])


def random_tree(rng: random.Random, n: int) -> Graph:
    return Graph(range(1, n + 1), [(v, rng.randint(1, v - 1)) for v in range(2, n + 1)])


def random_graph(rng: random.Random, n: int, p: float = 0.4, directed: bool = False) -> Graph:
    if directed:
        edges = [(u, w) for u in range(1, n + 1) for w in range(1, n + 1) if u != w and rng.random() < p]
    else:
        edges = [(u, w) for u in range(1, n + 1) for w in range(u + 1, n + 1) if rng.random() < p]
    return Graph(range(1, n + 1), edges, directed)


def connected_random_graph(rng: random.Random, n: int, extra: float = 0.3) -> Graph:
    tree = random_tree(rng, n)
    edges = set(tree.sorted_edges)
    for u in range(1, n + 1):
        for w in range(u + 1, n + 1):
            if rng.random() < extra:
                edges.add((u, w))
    return Graph(range(1, n + 1), edges)


def _fmt(values) -> str:
    return "{" + ", ".join(format(round(v, 4), "g") if isinstance(v, float) else str(v) for v in values) + "}"


def _violation(report) -> str:
    v = report.first_violation
    if v is None:
        return f"holds up to n={report.n_max}"
    return f"n={v.n}: |Val|={v.val_count}, |BVal|={v.bval_count}, bound {v.bound}"


# -- suites -------------------------------------------------------------------------


def suite_prop31() -> SuiteResult:
    r = SuiteResult("prop31")
    m, corpus = builtin_counterexample("prop31")
    ghat = corpus.graph("ghat")
    got = tuple(evaluate(m, Pair(v, ghat)) for v in ghat.sorted_vertices)
    r.add("values on the three-vertex graph are 2, 3, 4", got == (2, 3, 4), _fmt(got))
    report = check_property(m, corpus, "bvp", 2)
    v = report.first_violation
    r.add("bvp fails at n=2 with |Val^2| = 4 > 3",
          v is not None and v.n == 2 and v.val_count == 4, _violation(report))
    pc = Precoloring({Pair("v", corpus.graph("single")): 0, Pair("v1", ghat): 0,
                      Pair("v2", ghat): 2, Pair("v3", ghat): 1})
    fam, f = synthesize_filter_from_precoloring(pc, m)
    ranking = verify_representation(m, fam, f, corpus, mode="ranking")
    values = verify_representation(m, fam, f, corpus, mode="values")
    r.add("sizes 0/2/1 give a ranking-exact representation", ranking.ok,
          f"f(0)={f(0)}, f(1)={f(1)}, f(2)={f(2)}")
    r.add("the same representation misses the values", not values.ok, f"{len(values.mismatches)} mismatches")
    search = search_precoloring(m, [p for _, p in corpus.distinct_pairs()])
    r.add("precoloring search finds a coloring", search.colored, f"{search.nodes} nodes")
    return r


def suite_prop34() -> SuiteResult:
    r = SuiteResult("prop34")
    m, corpus = builtin_counterexample("prop34")
    search = search_precoloring(m, [p for _, p in corpus.distinct_pairs()], realizable=False)
    r.add("precoloring search is exhaustive and reports uncolorable",
          search.status == "uncolorable", f"{search.status}, {search.nodes} nodes")
    return r


def suite_prop44() -> SuiteResult:
    r = SuiteResult("prop44")
    start = time.perf_counter()
    counts = [count_connected_subgraphs(Pair(1, line(n))) for n in range(1, 13)]
    s4 = make_special("star", 4)
    centre, leaf = count_connected_subgraphs(Pair(1, s4)), count_connected_subgraphs(Pair(2, s4))
    mid = count_connected_subgraphs(Pair(2, line(3)))
    elapsed = time.perf_counter() - start
    r.add("|A(1,L_n)| = n for n = 1..12", counts == list(range(1, 13)), str(counts))
    r.add("|A(centre,S_4)| = 8, |A(leaf,S_4)| = 5, |A(2,L_3)| = 4",
          (centre, leaf, mid) == (8, 5, 4), f"{centre}, {leaf}, {mid}")
    r.add("counts finish within 1 s", elapsed < 1.0, f"{elapsed:.3f} s")
    m = MeasureSpec.builtin("closeness")
    corpus = Corpus(lines(range(1, 6)) + [("S4", s4)])
    report = check_property(m, corpus, "bvp", 5)
    val5 = val_set(m, corpus, 5)
    r.add("closeness bvp fails with |Val^5| >= 7 > 6",
          not report.holds and report.first_violation.n == 5 and len(val5) >= 7,
          f"{_violation(report)}, Val^5 = {_fmt(val5.values)}")
    return r


def suite_closeness_ranking() -> SuiteResult:
    r = SuiteResult("closeness_ranking")
    m = MeasureSpec.builtin("closeness")
    entries = lines(range(1, 6)) + [("S4", make_special("star", 4))]
    corpus = union_corpus(entries)
    report = check_property(m, corpus, "nonuniform_bvp", 5)
    val5 = val_set(m, corpus, 5, scope="union")
    r.add("non-uniform bvp fails on the disjoint union with |Val_G^5| > 6",
          not report.holds and len(val5) > 6, f"{_violation(report)}, |Val_G^5| = {len(val5)}")
    connected = Corpus([("L3", line(3)), ("S4", make_special("star", 4)), ("H2", make_special("h", 2))])
    fam, f = synthesize_connected_ranking_representation(m, connected)
    rep = verify_representation(m, fam, f, connected, mode="ranking")
    r.add("connected corpus admits a ranking representation", rep.ok, f"{rep.checked} comparisons")
    return r


def harmonic_corpus(directed: bool = False) -> Corpus:
    if directed:
        extra = [("H1", Graph([1, 2, 3], [(2, 1), (2, 3)], True)),
                 ("H2", Graph([1, 2, 3, 4], [(2, 1), (2, 3), (3, 4)], True))]
        return Corpus(lines(range(1, 7), True, "dL") + extra)
    return Corpus(lines(range(1, 7)) + [("S4", make_special("star", 4)), ("L4copy", line(4))])


def suite_harmonic() -> SuiteResult:
    r = SuiteResult("harmonic")
    m = MeasureSpec.builtin("harmonic")
    a, b = evaluate(m, Pair(2, line(3))), evaluate(m, Pair(2, line(4)))
    r.add("Harmonic(2,L_3) = 2 and Harmonic(2,L_4) = 5/2 exactly",
          a == 2 and b == Fraction(5, 2) and isinstance(b, Fraction), f"{a}, {b}")
    r.add("|A(2,L_4)| = 6", count_connected_subgraphs(Pair(2, line(4))) == 6)
    corpus = harmonic_corpus()
    report = check_property(m, corpus, "bvp", 6)
    val6 = val_set(m, corpus, 6)
    r.add("bvp fails with |Val^6| >= 8 > 7", not report.holds and len(val6) >= 8,
          f"{_violation(report)}, Val^6 = {_fmt(val6.values)}")
    return r


def lpr_corpus(directed: bool = False) -> Corpus:
    if directed:
        extra = [("dS3", make_special("star", 3, True)),
                 ("H", Graph([1, 2, 3, 4], [(2, 1), (2, 3), (2, 4)], True))]
        return Corpus(lines(range(1, 6), True, "dL") + extra)
    return Corpus(lines(range(2, 7)) + [("S4", make_special("star", 4))])


def suite_lpr() -> SuiteResult:
    r = SuiteResult("lpr")
    m = MeasureSpec.builtin("pagerank_local")
    l2 = [evaluate(m, Pair(v, line(2))) for v in (1, 2)]
    r.add("both vertices of L_2 get 1", all(abs(x - 1) < 1e-9 for x in l2), _fmt(l2))
    corpus = lpr_corpus()
    report = check_property(m, corpus, "bvp", 6)
    val6 = val_set(m, corpus, 6)
    r.add("undirected: |Val^6| > 7 and bvp is violated", len(val6) > 7 and not report.holds,
          f"|Val^6| = {len(val6)}, {_violation(report)}")
    dcorpus = lpr_corpus(directed=True)
    dval5 = val_set(m, dcorpus, 5)
    r.add("directed: |Val^5| >= 7", len(dval5) >= 7, f"|Val^5| = {len(dval5)}")
    return r


EIGENVECTOR_EXPECTED = {
    "L3": (0.5, 0.707),
    "L4": (0.371, 0.601),
    "L5": (0.288,),
    "L6": (0.231,),
    "L7": (0.191,),
    "S3": (0.408,),
    "tee": (0.353,),
}


def eigenvector_corpus() -> Corpus:
    return Corpus(lines(range(3, 8)) + [("S3", make_special("star", 4)), ("tee", make_special("tee"))])


def suite_eigenvector() -> SuiteResult:
    r = SuiteResult("eigenvector")
    m = MeasureSpec.builtin("eigenvector")
    corpus = eigenvector_corpus()
    for name, expected in EIGENVECTOR_EXPECTED.items():
        g = corpus.graph(name)
        low = [evaluate(m, Pair(v, g)) for v in g.sorted_vertices
               if count_connected_subgraphs(Pair(v, g)) <= 7]
        ok = all(any(abs(x - e) <= EIGENVECTOR_DIGITS for x in low) for e in expected)
        r.add(f"{name} low-count values include {_fmt(expected)} within 0.001", ok, _fmt(sorted(set(
            round(x, 4) for x in low))))
    report = check_property(m, corpus, "bvp", 7)
    val7 = val_set(m, corpus, 7)
    r.add("bvp is violated and |Val^7| > 8", not report.holds and len(val7) > 8,
          f"|Val^7| = {len(val7)}, first {_violation(report)}")
    return r


def suite_betweenness(trees: int = 100, seed: int = 7) -> SuiteResult:
    r = SuiteResult("betweenness")
    m = MeasureSpec.builtin("betweenness")
    got = [evaluate(m, Pair(3, make_special("h", n))) for n in range(1, 9)]
    r.add("Betweenness(3,H_n) = 2/n for n = 1..8",
          got == [Fraction(2, n) for n in range(1, 9)], _fmt(got))
    corpus = Corpus(h_graphs(range(1, 7)))
    report = check_property(m, corpus, "monotonic_bvp", 4)
    val4, bval4 = val_set(m, corpus, 4), bval_set(m, corpus, 4)
    r.add("monotonic bvp fails with |Val^4| + |BVal^4| > 5",
          not report.holds and len(val4) + len(bval4) > 5,
          f"Val^4 = {_fmt(val4.values)}, BVal^4 = {_fmt(bval4.values)}")
    rng = random.Random(seed)
    stress = MeasureSpec.builtin("stress")
    bad = 0
    for _ in range(trees):
        t = random_tree(rng, rng.randint(1, 10))
        bad += any(evaluate(m, Pair(v, t)) != evaluate(stress, Pair(v, t)) for v in t.sorted_vertices)
    r.add(f"Betweenness = Stress on {trees} random trees", bad == 0, f"{bad} trees differ")
    return r


def suite_prop57() -> SuiteResult:
    r = SuiteResult("prop57")
    m, corpus = builtin_counterexample("prop57")
    report = check_property(m, corpus, "nonuniform_bvp", 4)
    r.add("non-uniform bvp holds on every graph", report.holds, _violation(report))
    pairs = [p for _, p in corpus.distinct_pairs()]
    start = time.perf_counter()
    search = search_precoloring(m, pairs, realizable=False)
    elapsed = time.perf_counter() - start
    r.add("search over all nine pairs reports uncolorable",
          len(pairs) == 9 and search.status == "uncolorable", f"{search.status}, {search.nodes} nodes")
    r.add("exhaustive search finishes within 10 s", elapsed < 10.0, f"{elapsed:.3f} s")
    return r


def suite_prop61() -> SuiteResult:
    r = SuiteResult("prop61")
    m, corpus = builtin_counterexample("prop61")
    fam, f = synthesize_value_representation(m, corpus)
    rep = verify_representation(m, fam, f, corpus, mode="values")
    r.add("value synthesis succeeds and verifies", rep.ok,
          ", ".join(f"f({k})={f(k)}" for k in sorted(f.entries)))
    val1, bval1 = val_set(m, corpus, 1), bval_set(m, corpus, 1)
    r.add("Val^1 = {1, 3} and BVal^1 = {2}", val1.values == (1, 3) and bval1.values == (2,),
          f"{_fmt(val1.values)}, {_fmt(bval1.values)}")
    try:
        synthesize_monotonic_representation(m, corpus)
        r.add("monotonic synthesis is rejected at n=1", False, "synthesis succeeded")
    except SynthesisError as exc:
        v = exc.report.first_violation if exc.report else None
        r.add("monotonic synthesis is rejected at n=1",
              v is not None and v.n == 1 and v.val_count == 2 and v.bval_count == 1, str(exc))
    return r


def _round_trip(m: MeasureSpec, corpus: Corpus, monotonic: bool = False) -> bool:
    try:
        synth = synthesize_monotonic_representation if monotonic else synthesize_value_representation
        fam, f = synth(m, corpus)
    except SynthesisError:
        return False
    return verify_representation(m, fam, f, corpus, mode="values").ok


def _ranking_round_trip(m: MeasureSpec, corpus: Corpus) -> bool:
    fam, f = synthesize_connected_ranking_representation(m, corpus)
    return verify_representation(m, fam, f, corpus, mode="ranking").ok


def _mixed_corpus() -> Corpus:
    return Corpus(lines(range(1, 5)) + [
        ("S4", make_special("star", 4)),
        ("H2", make_special("h", 2)),
        ("K3", Graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])),
        ("tee", make_special("tee")),
        ("ghat", make_special("ghat3")),
    ])


def _connected_corpus() -> Corpus:
    return Corpus([(n, g) for n, g in _mixed_corpus() if g.is_connected()])


def suite_tables() -> SuiteResult:
    r = SuiteResult("tables")
    mixed, connected = _mixed_corpus(), _connected_corpus()
    grid: dict = {}

    for kind, label in (("stress", "Stress"), ("all_subgraphs", "All-Subgraphs"),
                        ("degree", "Degree"), ("cross_clique", "Cross-Clique")):
        m = MeasureSpec.builtin(kind)
        ok = r.add(f"{label}: value and monotonic round trips", _round_trip(m, mixed) and _round_trip(m, mixed, True))
        grid[label] = ("yes" if ok else "FAILED", "yes" if ok else "FAILED")

    tree_witness = {
        "Closeness": (MeasureSpec.builtin("closeness"), Corpus(lines(range(1, 6)) + [("S4", make_special("star", 4))]), 5),
        "Harmonic": (MeasureSpec.builtin("harmonic"), harmonic_corpus(), 6),
        "PageRank": (MeasureSpec.builtin("pagerank_local"), lpr_corpus(), 6),
        "Eigenvector": (MeasureSpec.builtin("eigenvector"), eigenvector_corpus(), 7),
    }
    for label, (m, corpus, n) in tree_witness.items():
        trees_only = all(g.is_connected() and len(g.edges) == len(g.vertices) - 1 for _, g in corpus)
        fails = not check_property(m, corpus, "bvp", n).holds
        values_ok = r.add(f"{label}: bvp violated on a tree corpus", trees_only and fails)
        ranking_cells = []
        if label != "Eigenvector":
            no = not check_property(m, union_corpus(list(corpus)), "nonuniform_bvp", n).holds
            ranking_cells.append("no" if r.add(f"{label}: non-uniform bvp violated on a disjoint union", no)
                                 else "FAILED")
        else:
            ranking_cells.append("open")
        con = r.add(f"{label}: connected ranking round trip", _ranking_round_trip(m, connected))
        ranking_cells.append("yes[con]" if con else "FAILED")
        grid[label] = ("no[trees]" if values_ok else "FAILED", " and ".join(ranking_cells))

    m = MeasureSpec.builtin("betweenness")
    rng = random.Random(11)
    trees = Corpus([(f"T{i}", random_tree(rng, rng.randint(1, 8))) for i in range(12)])
    tree_ok = r.add("Betweenness: value and monotonic round trips on random trees",
                    _round_trip(m, trees) and _round_trip(m, trees, True))
    con = r.add("Betweenness: connected ranking round trip", _ranking_round_trip(m, connected))
    grid["Betweenness"] = ("open and " + ("yes[trees]" if tree_ok else "FAILED"),
                           "open and " + ("yes[con]" if con else "FAILED"))

    hs = h_graphs(range(1, 7))
    mono_no = r.add("Betweenness: monotonic bvp violated on connected graphs",
                    not check_property(m, Corpus(hs), "monotonic_bvp", 4).holds)
    rank_no = r.add("Betweenness: non-uniform monotonic bvp violated on a disjoint union",
                    not check_property(m, union_corpus(hs), "nonuniform_monotonic_bvp", 4).holds)

    r.notes.append("Subgraph motif measures (absolute values | induced ranking):")
    width = max(len(k) for k in grid)
    for label, (values, ranking) in grid.items():
        r.notes.append(f"  {label:<{width}}  {values:<24} {ranking}")
    r.notes.append("Monotonic variant, where it differs:")
    r.notes.append(f"  {'Betweenness':<{width}}  "
                   f"{('no[con]' if mono_no else 'FAILED') + ' and ' + ('yes[trees]' if tree_ok else 'FAILED'):<24} "
                   f"{'no' if rank_no else 'FAILED'} and {'yes[con]' if con else 'FAILED'}")
    return r


def _paired_chain(k: int) -> Graph:
    """Vertices 0..k with 2-cycles on (i, i+1) for even i; odd k leaves vertex k isolated."""
    edges = []
    for i in range(0, k, 2):
        edges += [(i, i + 1), (i + 1, i)]
    return Graph(range(k + 1), edges, directed=True)


def suite_directed() -> SuiteResult:
    r = SuiteResult("directed")
    closeness = MeasureSpec.builtin("closeness")
    corpus = Corpus(lines(range(1, 6), True, "dL") + [
        ("outstar", Graph([1, 2, 3], [(1, 2), (1, 3)], True)),
        ("H", Graph([1, 2, 3, 4], [(1, 2), (2, 3), (2, 4)], True)),
    ])
    report = check_property(closeness, corpus, "bvp", 5)
    val5 = val_set(closeness, corpus, 5)
    r.add("closeness: bvp fails with |Val^5| > 6", not report.holds and len(val5) > 6,
          f"Val^5 = {_fmt(val5.values)}")

    harmonic = MeasureSpec.builtin("harmonic")
    hcorpus = harmonic_corpus(directed=True)
    val6 = val_set(harmonic, hcorpus, 6)
    r.add("harmonic: bvp fails with |Val^6| > 7",
          not check_property(harmonic, hcorpus, "bvp", 6).holds and len(val6) > 7, f"|Val^6| = {len(val6)}")

    lpr = MeasureSpec.builtin("pagerank_local")
    dval5 = val_set(lpr, lpr_corpus(directed=True), 5)
    r.add("local PageRank: |Val^5| >= 7 > 6", len(dval5) >= 7, f"|Val^5| = {len(dval5)}")

    eig = MeasureSpec.builtin("eigenvector")
    ecorpus = Corpus([(f"G{k}", _paired_chain(k)) for k in range(1, 11)])
    val4 = val_set(eig, ecorpus, 4, epsilon=EIGENVECTOR_DIGITS)
    r.add("eigenvector: bvp fails with |Val^4| > 5 at three-decimal precision",
          not check_property(eig, ecorpus, "bvp", 4, epsilon=EIGENVECTOR_DIGITS).holds and len(val4) > 5,
          f"Val^4 = {_fmt(val4.values)}")

    stress = MeasureSpec.builtin("stress")
    rng = random.Random(3)
    graphs = Corpus([(f"D{i}", random_graph(rng, rng.randint(1, 5), 0.35, directed=True)) for i in range(10)])
    fam, f = stress_representation(graphs)
    r.add("stress: shortest-path family with f(k) = k reproduces the values",
          verify_representation(stress, fam, f, graphs).ok)
    r.add("stress: monotonic synthesis round trip", _round_trip(stress, graphs, monotonic=True))
    return r


SUITES: dict[str, Callable[[], SuiteResult]] = {
    "prop31": suite_prop31,
    "prop34": suite_prop34,
    "prop44": suite_prop44,
    "prop57": suite_prop57,
    "prop61": suite_prop61,
    "closeness_ranking": suite_closeness_ranking,
    "harmonic": suite_harmonic,
    "lpr": suite_lpr,
    "eigenvector": suite_eigenvector,
    "betweenness": suite_betweenness,
    "tables": suite_tables,
    "directed": suite_directed,
}


def run_suite(name: str) -> SuiteResult:
    try:
        return SUITES[name]()
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}") from None


def report_lines(result: SuiteResult) -> list[str]:
    return [c.line(result.suite) for c in result.checks] + result.notes
