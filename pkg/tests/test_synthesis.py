import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motifcent.coloring import Precoloring, PrecoloringError, search_precoloring
from motifcent.counterexamples import builtin_counterexample
from motifcent.graph import Corpus, Graph, Pair, make_special, single_vertex
from motifcent.measures import MeasureSpec, evaluate
from motifcent.subgraphs import count_connected_subgraphs, enumerate_connected_subgraphs
from motifcent.synthesis import (
    FamilyAssignment,
    FilterTable,
    SynthesisError,
    all_subgraphs_representation,
    evaluate_representation,
    induced_ranking,
    materialize_witnesses,
    stress_representation,
    synthesize_connected_ranking_representation,
    synthesize_filter_from_precoloring,
    synthesize_monotonic_ranking_representation,
    synthesize_monotonic_representation,
    synthesize_value_representation,
    verify_representation,
)

from .strategies import corpora, graphs, table_values, trees

PROP31, PROP31_CORPUS = builtin_counterexample("prop31")
GHAT = PROP31_CORPUS.graph("ghat")


def lines(ns):
    return [(f"L{n}", make_special("line", n)) for n in ns]


def _sizes_within_counts(fam):
    for p, size in fam.sizes.items():
        assert 0 <= size <= count_connected_subgraphs(p)


class TestTypes:
    def test_monotone_flag_is_checked(self):
        with pytest.raises(SynthesisError):
            FilterTable({0: 2, 1: 1}, monotone=True)
        assert FilterTable({0: 1, 1: 1, 2: 5}, monotone=True)(2) == 5

    def test_undefined_filter_value(self):
        with pytest.raises(SynthesisError):
            FilterTable({0: 1})(3)

    def test_missing_family_size(self):
        with pytest.raises(SynthesisError):
            FamilyAssignment({})[Pair(1, single_vertex())]


class TestRanking:
    def test_prop31_three_classes(self):
        assert induced_ranking(PROP31, GHAT) == (("v1",), ("v2",), ("v3",))

    def test_constant(self):
        assert induced_ranking(MeasureSpec.from_table({}, default=0), GHAT) == (("v1", "v2", "v3"),)

    def test_degree_on_star(self):
        assert induced_ranking(MeasureSpec.builtin("degree"), make_special("star", 4)) == ((2, 3, 4), (1,))


class TestClosedForms:
    @settings(max_examples=40, deadline=None)
    @given(graphs(max_vertices=7))
    def test_stress_family(self, g):
        corpus = Corpus([("g", g)])
        fam, f = stress_representation(corpus)
        stress = MeasureSpec.builtin("stress")
        for v in g.vertices:
            assert evaluate_representation(fam, f, Pair(v, g)) == evaluate(stress, Pair(v, g))
        assert verify_representation(stress, fam, f, corpus).ok
        _sizes_within_counts(fam)

    def test_all_subgraphs_family(self):
        corpus = Corpus(lines(range(1, 5)) + [("S4", make_special("star", 4))])
        fam, f = all_subgraphs_representation(corpus)
        assert verify_representation(MeasureSpec.builtin("all_subgraphs"), fam, f, corpus).ok
        assert f(8) == 3

    def test_prop32_family_reproduces_ranking_only(self):
        fam = FamilyAssignment({Pair("v", PROP31_CORPUS.graph("single")): 0, Pair("v1", GHAT): 0,
                                Pair("v2", GHAT): 2, Pair("v3", GHAT): 1})
        f = FilterTable({0: 1, 1: 3, 2: 2})
        assert verify_representation(PROP31, fam, f, PROP31_CORPUS, mode="ranking").ok
        assert not verify_representation(PROP31, fam, f, PROP31_CORPUS, mode="values").ok

    def test_full_family_with_wrong_filter(self):
        corpus = Corpus(lines([3]))
        fam, f = all_subgraphs_representation(corpus)
        wrong = FilterTable({k: v + 1 for k, v in f.entries.items()}, True)
        report = verify_representation(MeasureSpec.builtin("all_subgraphs"), fam, wrong, corpus)
        assert not report.ok and len(report.mismatches) == 3

    def test_coverage_failure(self):
        with pytest.raises(SynthesisError):
            verify_representation(PROP31, FamilyAssignment({}), FilterTable({}), PROP31_CORPUS)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            verify_representation(PROP31, FamilyAssignment({}), FilterTable({}), PROP31_CORPUS, mode="both")


class TestValueSynthesis:
    def test_degree(self):
        corpus = Corpus(lines(range(1, 5)) + [("S4", make_special("star", 4))])
        m = MeasureSpec.builtin("degree")
        fam, f = synthesize_value_representation(m, corpus)
        assert verify_representation(m, fam, f, corpus).ok
        _sizes_within_counts(fam)

    def test_all_subgraphs(self):
        corpus = Corpus(lines(range(1, 5)) + [("H2", make_special("h", 2))])
        m = MeasureSpec.builtin("all_subgraphs")
        fam, f = synthesize_value_representation(m, corpus)
        assert verify_representation(m, fam, f, corpus).ok

    def test_prop31_rejected(self):
        with pytest.raises(SynthesisError) as info:
            synthesize_value_representation(PROP31, PROP31_CORPUS)
        assert info.value.report.first_violation.n == 2

    def test_prop61_order(self):
        m, corpus = builtin_counterexample("prop61")
        fam, f = synthesize_value_representation(m, corpus)
        assert [f(k) for k in range(3)] == [1, 3, 2]
        assert verify_representation(m, fam, f, corpus).ok

    def test_threshold_first_keeps_sizes_small(self):
        # value 0 only occurs on a vertex with many connected subgraphs
        big = make_special("star", 6)
        m = MeasureSpec.from_table({Pair(1, big): 0}, default=5)
        corpus = Corpus([("one", single_vertex()), ("star", big)])
        fam, f = synthesize_value_representation(m, corpus)
        assert fam[Pair(1, single_vertex())] == 0 and f(0) == 5
        assert verify_representation(m, fam, f, corpus).ok


class TestMonotonicSynthesis:
    @settings(max_examples=30, deadline=None)
    @given(st.lists(trees(max_vertices=8), min_size=1, max_size=4, unique=True))
    def test_stress_on_trees(self, ts):
        corpus = Corpus([(f"T{i}", t) for i, t in enumerate(ts)])
        m = MeasureSpec.builtin("stress")
        fam, f = synthesize_monotonic_representation(m, corpus)
        assert f.monotone and f.is_non_decreasing()
        assert verify_representation(m, fam, f, corpus).ok
        _sizes_within_counts(fam)

    def test_prop61_rejected(self):
        m, corpus = builtin_counterexample("prop61")
        with pytest.raises(SynthesisError) as info:
            synthesize_monotonic_representation(m, corpus)
        assert info.value.report.first_violation.n == 1

    def test_betweenness_on_h_graphs_rejected(self):
        corpus = Corpus([(f"H{n}", make_special("h", n)) for n in range(1, 7)])
        with pytest.raises(SynthesisError):
            synthesize_monotonic_representation(MeasureSpec.builtin("betweenness"), corpus)


class TestRankingSynthesis:
    def test_closeness_on_connected_graphs(self):
        corpus = Corpus([("L3", make_special("line", 3)), ("S4", make_special("star", 4)),
                         ("H2", make_special("h", 2))])
        m = MeasureSpec.builtin("closeness")
        fam, f = synthesize_connected_ranking_representation(m, corpus)
        assert f.monotone
        assert verify_representation(m, fam, f, corpus, mode="ranking").ok
        _sizes_within_counts(fam)

    def test_constant_measure(self):
        corpus = Corpus(lines([1, 3]))
        fam, f = synthesize_connected_ranking_representation(MeasureSpec.from_table({}, default=9), corpus)
        assert set(fam.sizes.values()) == {0} and f(0) == 1

    def test_disconnected_rejected(self):
        with pytest.raises(SynthesisError, match="ghat"):
            synthesize_connected_ranking_representation(PROP31, PROP31_CORPUS)

    def test_monotonic_ranking_on_disconnected_graphs(self):
        m = MeasureSpec.builtin("degree")
        corpus = Corpus([("ghat", GHAT), ("union", Graph([1, 2, 3, 4], [(1, 2), (2, 3)]))])
        fam, f = synthesize_monotonic_ranking_representation(m, corpus)
        assert verify_representation(m, fam, f, corpus, mode="ranking").ok

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_vertices=8, directed=False, connected=True, max_edges=10), st.data())
    def test_random_tables(self, g, data):
        corpus = Corpus([("g", g)])
        m = MeasureSpec.from_table(data.draw(table_values(corpus, high=9)))
        fam, f = synthesize_connected_ranking_representation(m, corpus)
        assert all(f(k) == k + 1 for k in f.entries)
        assert verify_representation(m, fam, f, corpus, mode="ranking").ok


class TestPrecoloringFilter:
    def test_paper_coloring(self):
        pc = Precoloring({Pair("v", PROP31_CORPUS.graph("single")): 0, Pair("v1", GHAT): 0,
                          Pair("v2", GHAT): 2, Pair("v3", GHAT): 1})
        fam, f = synthesize_filter_from_precoloring(pc, PROP31)
        assert f(0) < f(2) < f(1)
        assert verify_representation(PROP31, fam, f, PROP31_CORPUS, mode="ranking").ok

    def test_searched_coloring(self):
        pairs = [p for _, p in PROP31_CORPUS.distinct_pairs()]
        pc = search_precoloring(PROP31, pairs).precoloring
        fam, f = synthesize_filter_from_precoloring(pc, PROP31)
        assert verify_representation(PROP31, fam, f, PROP31_CORPUS, mode="ranking").ok

    def test_constant(self):
        pc = Precoloring({Pair(v, GHAT): 0 for v in GHAT.vertices})
        fam, f = synthesize_filter_from_precoloring(pc, MeasureSpec.from_table({}, default=1))
        assert list(f.entries) == [0]

    def test_invalid_coloring(self):
        pc = Precoloring({Pair(v, GHAT): 0 for v in GHAT.vertices})
        with pytest.raises(PrecoloringError, match="check_injective"):
            synthesize_filter_from_precoloring(pc, PROP31)

    @settings(max_examples=40, deadline=None)
    @given(corpora(max_graphs=3, max_vertices=4), st.data())
    def test_order_agrees_with_values(self, corpus, data):
        m = MeasureSpec.from_table(data.draw(table_values(corpus, high=5)))
        result = search_precoloring(m, [p for _, p in corpus.distinct_pairs()])
        if not result.colored:
            return
        fam, f = synthesize_filter_from_precoloring(result.precoloring, m)
        assert verify_representation(m, fam, f, corpus, mode="ranking").ok
        _sizes_within_counts(fam)


class TestWitnesses:
    def test_zero(self):
        p = Pair(1, make_special("line", 3))
        assert materialize_witnesses(FamilyAssignment({p: 0})).witnesses[p] == ()

    def test_prefix(self):
        p = Pair(1, make_special("line", 3))
        got = materialize_witnesses(FamilyAssignment({p: 2})).witnesses[p]
        assert got == enumerate_connected_subgraphs(p).members[:2]
        assert got == (single_vertex(1), make_special("line", 2))

    def test_full(self):
        p = Pair(1, make_special("star", 4))
        got = materialize_witnesses(FamilyAssignment({p: 8})).witnesses[p]
        assert got == enumerate_connected_subgraphs(p).members

    def test_too_large(self):
        p = Pair(1, make_special("line", 3))
        with pytest.raises(SynthesisError):
            materialize_witnesses(FamilyAssignment({p: 4}))

    @settings(max_examples=30, deadline=None)
    @given(trees(max_vertices=6))
    def test_synthesized_witnesses_are_valid(self, t):
        corpus = Corpus([("t", t)])
        fam, _ = synthesize_value_representation(MeasureSpec.builtin("degree"), corpus)
        fam = materialize_witnesses(fam)
        for p, members in fam.witnesses.items():
            assert len(members) == fam.sizes[p] == len(set(members))
            for s in members:
                assert p.vertex in s.vertices and s.edges <= p.graph.edges


def test_log2_filter_is_exact_on_powers_of_two():
    corpus = Corpus(lines([4]))
    _, f = all_subgraphs_representation(corpus)
    assert f(4) == 2
    assert math.isclose(all_subgraphs_representation(Corpus(lines([3])))[1](4), 2)
