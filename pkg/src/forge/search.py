"""Exhaustive search for hypergroup counterexamples on small graphs.

Connected graphs are generated by vertex augmentation with canonical
dedup (color refinement plus an ordered minimum adjacency string), every
admissible base point is tried, and each pointed graph that satisfies
the two random-walk conditions is classified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EnumerationCapExceeded
from .graphs import build_graph, check_assumptions
from .hypergroup import build_table, check_S1, check_S2, classify

DEFAULT_GRAPH_CAP = 100_000


def _refine(neighbors, colors):
    """One-dimensional color refinement to a stable partition."""
    n = len(neighbors)
    while True:
        signatures = []
        for v in range(n):
            hist = sorted(colors[w] for w in neighbors[v])
            signatures.append((colors[v], tuple(hist)))
        order = sorted(set(signatures))
        ranks = {sig: r for r, sig in enumerate(order)}
        new = [ranks[signatures[v]] for v in range(n)]
        if new == colors:
            return colors
        colors = new


def _canonical(neighbors, colors=None) -> tuple:
    """Minimum upper-triangle adjacency string over orderings compatible
    with the refined coloring, plus one ordering attaining it."""
    n = len(neighbors)
    colors = _refine(neighbors, list(colors) if colors else [0] * n)
    best: list | None = None
    best_order: tuple | None = None

    def extend(prefix, used, rows):
        nonlocal best, best_order
        pos = len(prefix)
        if pos == n:
            if best is None or rows < best:
                best = list(rows)
                best_order = tuple(prefix)
            return
        eligible = [v for v in range(n) if v not in used]
        min_color = min(colors[v] for v in eligible)
        for v in eligible:
            if colors[v] != min_color:
                continue
            row = tuple(1 if prefix[i] in neighbors[v] else 0 for i in range(pos))
            candidate = rows + [row]
            if best is not None and candidate > best[: len(candidate)]:
                continue
            prefix.append(v)
            used.add(v)
            extend(prefix, used, candidate)
            prefix.pop()
            used.remove(v)

    extend([], set(), [])
    assert best is not None and best_order is not None
    key = (tuple(colors.count(c) for c in sorted(set(colors))), tuple(best))
    return key, best_order


def canonical_key(neighbors, colors=None) -> tuple:
    """Isomorphism certificate: equal keys iff isomorphic (as colored graphs)."""
    return _canonical(neighbors, colors)[0]


def canonical_base(neighbors) -> int:
    """The vertex placed first by the canonical ordering."""
    return _canonical(neighbors)[1][0]


def _edges_from_neighbors(neighbors) -> tuple:
    return tuple(
        (u, v) for u in range(len(neighbors)) for v in neighbors[u] if u < v
    )


def enumerate_connected_graphs(max_vertices: int, cap: int = DEFAULT_GRAPH_CAP):
    """Yield (n, neighbor-lists) for one representative per isomorphism
    class of connected graphs on 1..max_vertices vertices."""
    total = 1
    level = [[set()]]
    yield 1, [set()]
    for n in range(2, max_vertices + 1):
        seen = {}
        for parent in level:
            for attach in range(1, 2 ** (n - 1)):
                subset = {i for i in range(n - 1) if attach >> i & 1}
                child = [set(s) for s in parent] + [set(subset)]
                for w in subset:
                    child[w].add(n - 1)
                key = canonical_key(child)
                if key in seen:
                    continue
                seen[key] = child
                total += 1
                if total > cap:
                    raise EnumerationCapExceeded(f"more than {cap} graphs")
        level = list(seen.values())
        for child in level:
            yield n, child


@dataclass(frozen=True)
class SearchEntry:
    """One classified pointed graph from the sweep."""

    vertices: int
    edges: tuple
    base: int
    commutative: bool
    associative: bool
    verdict: str
    witness: tuple | None

    def to_jsonable(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": [list(e) for e in self.edges],
            "base": self.base,
            "commutative": self.commutative,
            "associative": self.associative,
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness else None,
        }


@dataclass(frozen=True)
class SearchReport:
    """Outcome of the exhaustive sweep up to max_vertices."""

    max_vertices: int
    base_policy: str
    graph_counts: dict
    pointed_examined: int
    rejected_condition: int
    rejected_walk: int
    classified: tuple
    counterexamples: tuple

    @property
    def conjecture_holds(self) -> bool:
        return not self.counterexamples

    def to_jsonable(self) -> dict:
        return {
            "max_vertices": self.max_vertices,
            "base_policy": self.base_policy,
            "graph_counts": {str(n): c for n, c in sorted(self.graph_counts.items())},
            "pointed_examined": self.pointed_examined,
            "rejected_condition": self.rejected_condition,
            "rejected_walk": self.rejected_walk,
            "classified": [e.to_jsonable() for e in self.classified],
            "counterexamples": [e.to_jsonable() for e in self.counterexamples],
            "conjecture_holds": self.conjecture_holds,
        }


def search_conjecture(
    max_vertices: int = 6,
    base_policy: str = "all",
    cap: int = DEFAULT_GRAPH_CAP,
) -> SearchReport:
    """Scan connected pointed graphs up to max_vertices vertices for one
    whose walk conditions hold but whose product table is not a hermitian
    hypergroup.  base_policy "all" tries every vertex as base; "canonical"
    tries only the first vertex of the canonical ordering."""
    if base_policy not in ("all", "canonical"):
        raise ValueError(f"unknown base policy {base_policy!r}")
    graph_counts: dict[int, int] = {}
    examined = rejected_condition = rejected_walk = 0
    classified = []
    for n, neighbors in enumerate_connected_graphs(max_vertices, cap):
        graph_counts[n] = graph_counts.get(n, 0) + 1
        edges = _edges_from_neighbors(neighbors)
        if base_policy == "canonical":
            bases = [canonical_base(neighbors)]
        else:
            bases = list(range(n))
        for base in bases:
            examined += 1
            pg = build_graph(edges, base, vertex_count=n)
            if not check_assumptions(pg).passed:
                rejected_condition += 1
                continue
            if not (check_S1(pg).passed and check_S2(pg).passed):
                rejected_walk += 1
                continue
            report = classify(build_table(pg))
            classified.append(
                SearchEntry(
                    n,
                    edges,
                    base,
                    report.commutative,
                    report.associative,
                    report.verdict,
                    report.witness,
                )
            )
    counterexamples = tuple(e for e in classified if e.verdict != "Hypergroup")
    return SearchReport(
        max_vertices,
        base_policy,
        graph_counts,
        examined,
        rejected_condition,
        rejected_walk,
        tuple(classified),
        counterexamples,
    )


def replay_counterexample(entry) -> tuple:
    """Rebuild a search entry's pointed graph and re-derive its verdicts;
    returns (assumptions, s1, s2, classification)."""
    if isinstance(entry, SearchEntry):
        n, edges, base = entry.vertices, entry.edges, entry.base
    else:
        n = entry["vertices"]
        edges = tuple(tuple(e) for e in entry["edges"])
        base = entry["base"]
    pg = build_graph(edges, base, vertex_count=n)
    assumptions = check_assumptions(pg)
    s1 = check_S1(pg)
    s2 = check_S2(pg)
    classification = classify(build_table(pg))
    return assumptions, s1, s2, classification
