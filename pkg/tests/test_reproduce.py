import pytest

from motifcent.reproduce import SUITES, report_lines, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    result = run_suite(name)
    assert result.checks, name
    failed = [c.line(name) for c in result.checks if not c.passed]
    assert not failed, failed


def test_report_lines_have_no_long_dashes():
    for name in ("prop31", "tables"):
        for line in report_lines(run_suite(name)):
            assert "—" not in line


def test_tables_grid_lists_every_measure():
    notes = "\n".join(run_suite("tables").notes)
    for label in ("Stress", "All-Subgraphs", "Degree", "Cross-Clique", "Closeness", "Harmonic",
                  "PageRank", "Eigenvector", "Betweenness"):
        assert label in notes
    assert "FAILED" not in notes


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
