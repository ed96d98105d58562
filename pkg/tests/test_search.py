"""Exhaustive small-graph search for the hypergroup conjecture.

Connected-graph counts up to seven vertices (1, 1, 2, 6, 21, 112, 853)
pin the canonical-form deduplication; the search itself is checked for
its aggregate bookkeeping and for replayability of whatever it reports.
"""

import pytest

from forge.errors import EnumerationCapExceeded
from forge.search import (
    build_graph,
    canonical_base,
    canonical_key,
    enumerate_connected_graphs,
    replay_counterexample,
    search_conjecture,
)


CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def test_connected_graph_counts():
    seen = {}
    for n, _neighbors in enumerate_connected_graphs(6):
        seen[n] = seen.get(n, 0) + 1
    assert seen == {n: CONNECTED_COUNTS[n] for n in range(1, 7)}


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceeded):
        list(enumerate_connected_graphs(7, cap=100))


def test_canonical_key_is_labeling_invariant():
    square_a = [(1, 3), (0, 2), (1, 3), (0, 2)]
    square_b = [(2, 3), (2, 3), (0, 1), (0, 1)]
    assert canonical_key(square_a) == canonical_key(square_b)
    path = [(1,), (0, 2), (1,)]
    triangle = [(1, 2), (0, 2), (0, 1)]
    assert canonical_key(path) != canonical_key(triangle)


def test_canonical_base_is_deterministic():
    square = [(1, 3), (0, 2), (1, 3), (0, 2)]
    assert canonical_base(square) == canonical_base(list(square))


def test_search_bookkeeping_all_bases():
    report = search_conjecture(max_vertices=6)
    assert report.base_policy == "all"
    assert report.graph_counts == {n: CONNECTED_COUNTS[n] for n in range(1, 7)}
    assert report.pointed_examined == 810
    assert report.rejected_condition == 375
    assert report.rejected_walk == 387
    assert len(report.classified) == 48
    assert report.counterexamples == ()
    assert report.conjecture_holds


def test_search_canonical_base_policy():
    report = search_conjecture(max_vertices=5, base_policy="canonical")
    assert report.base_policy == "canonical"
    assert report.pointed_examined == 31
    assert report.conjecture_holds


def test_accounting_adds_up():
    report = search_conjecture(max_vertices=5)
    assert (
        report.rejected_condition + report.rejected_walk + len(report.classified)
        == report.pointed_examined
    )


def test_every_classified_entry_is_a_hypergroup_so_far():
    report = search_conjecture(max_vertices=6)
    assert all(e.verdict == "Hypergroup" for e in report.classified)
    assert all(e.commutative and e.associative for e in report.classified)


def test_replay_reproduces_classification():
    report = search_conjecture(max_vertices=5)
    entry = max(report.classified, key=lambda e: e.vertices)
    assumptions, s1, s2, classification = replay_counterexample(entry)
    assert assumptions.passed and s1.passed and s2.passed
    assert classification.verdict == entry.verdict


def test_replay_accepts_jsonable_entry():
    report = search_conjecture(max_vertices=4)
    entry = report.classified[-1].to_jsonable()
    _, _, _, classification = replay_counterexample(entry)
    assert classification.verdict == entry["verdict"]


def test_build_graph_from_entry_fields():
    report = search_conjecture(max_vertices=4)
    entry = max(report.classified, key=lambda e: len(e.edges))
    pg = build_graph(entry.edges, entry.base, vertex_count=entry.vertices)
    assert pg.vertex_count == entry.vertices
