import io
import json
import subprocess
import sys

import pytest

from motifcent import formats
from motifcent.cli import main
from motifcent.counterexamples import builtin_counterexample
from motifcent.graph import make_special


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write_graph(path, g, name):
    path.write_text(formats.dumps(formats.graph_to_json(g, name)))
    return str(path)


@pytest.fixture
def closeness_corpus(tmp_path):
    graphs = [formats.graph_to_json(make_special("line", n), f"L{n}") for n in range(1, 6)]
    graphs.append(formats.graph_to_json(make_special("star", 4), "S4"))
    path = tmp_path / "corpus.json"
    path.write_text(formats.dumps(graphs))
    return str(path)


@pytest.fixture
def prop31_files(tmp_path):
    m, corpus = builtin_counterexample("prop31")
    corpus_path = tmp_path / "prop31_corpus.json"
    corpus_path.write_text(formats.dumps(formats.corpus_to_json(corpus)))
    table_path = tmp_path / "prop31.json"
    table_path.write_text(formats.dumps(formats.table_to_json(m, corpus)))
    return str(corpus_path), str(table_path)


class TestEval:
    def test_harmonic_on_l3(self, tmp_path):
        path = write_graph(tmp_path / "L3.json", make_special("line", 3), "L3")
        code, out, _ = run("eval", "--measure", "harmonic", "--graph", path)
        assert code == 0
        assert [(r["vertex"], r["value"]) for r in json.loads(out)] == [("1", "1.5"), ("2", "2"), ("3", "1.5")]

    def test_betweenness_single_vertex(self, tmp_path):
        path = write_graph(tmp_path / "H4.json", make_special("h", 4), "H4")
        code, out, _ = run("eval", "--measure", "betweenness", "--graph", path, "--vertex", "3")
        assert code == 0 and json.loads(out) == [{"graph": "H4", "vertex": "3", "value": "0.5"}]

    def test_table_measure(self, tmp_path, prop31_files):
        _, table = prop31_files
        ghat = write_graph(tmp_path / "ghat3.json", make_special("ghat3"), "ghat")
        code, out, _ = run("eval", "--measure", "table", "--table", table, "--graph", ghat)
        assert code == 0 and [r["value"] for r in json.loads(out)] == ["2", "3", "4"]

    def test_csv(self, tmp_path):
        path = write_graph(tmp_path / "L2.json", make_special("line", 2), "L2")
        code, out, _ = run("eval", "--measure", "degree", "--graph", path, "--format", "csv")
        assert out == "graph,vertex,value\nL2,1,1\nL2,2,1\n"

    def test_jobs_do_not_change_output(self, closeness_corpus):
        one = run("eval", "--measure", "pagerank", "--corpus", closeness_corpus)
        two = run("--jobs", "2", "eval", "--measure", "pagerank", "--corpus", closeness_corpus)
        assert one == two and one[0] == 0

    def test_output_is_byte_deterministic(self, closeness_corpus):
        assert run("eval", "--measure", "eigenvector", "--corpus", closeness_corpus) == \
            run("eval", "--measure", "eigenvector", "--corpus", closeness_corpus)

    def test_unknown_vertex(self, tmp_path):
        path = write_graph(tmp_path / "L2.json", make_special("line", 2), "L2")
        code, _, err = run("eval", "--measure", "degree", "--graph", path, "--vertex", "9")
        assert code == 2 and "9" in err

    def test_table_without_file(self, closeness_corpus):
        assert run("eval", "--measure", "table", "--corpus", closeness_corpus)[0] == 2

    def test_bad_alpha(self, closeness_corpus):
        assert run("eval", "--measure", "pagerank", "--alpha", "1.5", "--corpus", closeness_corpus)[0] == 2


class TestCheck:
    def test_closeness_violation(self, closeness_corpus):
        code, out, _ = run("check", "--measure", "closeness", "--corpus", closeness_corpus,
                           "--property", "bvp", "--nmax", "5")
        report = json.loads(out)
        assert code == 1 and report["first_violation"]["n"] == 5
        assert report["first_violation"]["val_count"] == 7

    def test_degree_holds(self, closeness_corpus):
        code, out, _ = run("check", "--measure", "degree", "--corpus", closeness_corpus, "--nmax", "10")
        assert code == 0 and json.loads(out)["holds"] is True

    def test_missing_file(self, tmp_path):
        code, _, err = run("check", "--measure", "degree", "--corpus", str(tmp_path / "none.json"), "--nmax", "3")
        assert code == 2 and "none.json" in err

    def test_csv_table(self, closeness_corpus):
        code, out, _ = run("check", "--measure", "closeness", "--corpus", closeness_corpus,
                           "--nmax", "2", "--format", "csv")
        assert code == 0 and out.startswith("scope,set,n,values\n")

    def test_usage_error(self):
        assert run("check", "--measure", "degree")[0] == 2


class TestSynthesize:
    def test_connected_ranking(self, tmp_path):
        graphs = [formats.graph_to_json(make_special(k, n), f"{k}{n}") for k, n in (("line", 3), ("star", 4), ("h", 2))]
        path = tmp_path / "con.json"
        path.write_text(formats.dumps(graphs))
        code, out, _ = run("synthesize", "--measure", "closeness", "--corpus", str(path), "--mode", "connected-ranking")
        payload = json.loads(out)
        assert code == 0 and payload["verification"]["ok"] and payload["monotone"]

    def test_values_with_witnesses(self, closeness_corpus):
        code, out, _ = run("synthesize", "--measure", "degree", "--corpus", closeness_corpus, "--witnesses")
        payload = json.loads(out)
        assert code == 0 and payload["verification"]["ok"] and "witnesses" in payload

    def test_property_failure(self, prop31_files):
        corpus, table = prop31_files
        code, out, _ = run("synthesize", "--measure", "table", "--table", table, "--corpus", corpus)
        assert code == 1 and json.loads(out)["report"]["holds"] is False

    def test_coloring_mode(self, prop31_files):
        corpus, table = prop31_files
        code, out, _ = run("synthesize", "--measure", "table", "--table", table, "--corpus", corpus,
                           "--mode", "coloring")
        assert code == 0 and json.loads(out)["verification"]["mode"] == "ranking"

    def test_monotonic_modes(self, closeness_corpus):
        assert run("synthesize", "--measure", "stress", "--corpus", closeness_corpus, "--mode", "monotonic")[0] == 0
        assert run("synthesize", "--measure", "degree", "--corpus", closeness_corpus,
                   "--mode", "monotonic-ranking")[0] == 0


class TestColor:
    def test_colorable(self, prop31_files):
        corpus, table = prop31_files
        code, out, _ = run("color", "--measure", "table", "--table", table, "--corpus", corpus)
        payload = json.loads(out)
        assert code == 0 and payload["status"] == "colored" and len(payload["precoloring"]) == 4

    def test_budget(self, prop31_files):
        corpus, table = prop31_files
        code, out, _ = run("color", "--measure", "table", "--table", table, "--corpus", corpus, "--budget", "1")
        assert code == 1 and json.loads(out)["status"] == "budget_exhausted"


class TestGenAndCount:
    def test_gen_line(self):
        code, out, _ = run("gen", "--kind", "line", "--n", "5")
        name, g = formats.graph_from_json(json.loads(out))
        assert code == 0 and g == make_special("line", 5)

    def test_gen_bad_n(self):
        assert run("gen", "--kind", "line", "--n", "0")[0] == 2

    def test_count(self, tmp_path):
        path = write_graph(tmp_path / "S4.json", make_special("star", 4), "S4")
        code, out, _ = run("count", "--graph", path, "--vertex", "1")
        assert code == 0 and json.loads(out)["count"] == 8

    def test_count_over_cap(self, tmp_path, monkeypatch):
        monkeypatch.delenv("MOTIFCENT_CAP", raising=False)
        path = write_graph(tmp_path / "S4.json", make_special("star", 4), "S4")
        code, out, _ = run("--cap", "5", "count", "--graph", path, "--vertex", "1")
        assert code == 0 and json.loads(out)["exceeds_cap"] == 5

    def test_count_env_cap(self, tmp_path, monkeypatch):
        monkeypatch.setenv("MOTIFCENT_CAP", "4")
        path = write_graph(tmp_path / "S4.json", make_special("star", 4), "S4")
        assert json.loads(run("count", "--graph", path, "--vertex", "2")[1])["count"] is None


class TestReproduce:
    def test_single_suite(self):
        code, out, _ = run("reproduce", "--suite", "prop44")
        assert code == 0
        assert all(line.startswith("PASS") for line in out.splitlines()[:-1])
        assert out.endswith("1/1 suites passed\n")

    def test_unknown_suite(self):
        assert run("reproduce", "--suite", "prop99")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "motifcent", "gen", "--kind", "tee"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["name"] == "tee"


def test_help_exits_zero():
    assert run("--help")[0] == 0
