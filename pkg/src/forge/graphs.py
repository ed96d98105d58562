"""Pointed graphs: construction, BFS spheres, and the standing assumptions.

A pointed graph is a simple connected locally finite graph with a chosen
base vertex.  Everything downstream is built from the sphere map
S_n(v) = {u : d(u, v) = n}; for the base vertex the spheres partition the
vertex set and their indices form the index set I of the graph.

Truncated windows (finite pieces of infinite graphs) carry an exactness
radius: spheres S_n(v) are only served when |v| + n stays within it, so
no query can silently see boundary artifacts.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    BadParameter,
    DisconnectedGraph,
    DuplicateEdge,
    RadiusExceeded,
    SelfLoop,
)

INFINITE = math.inf


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1 with sorted adjacency."""

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v]

    def label(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v)


@dataclass(eq=False)
class PointedGraph:
    """A graph with a base vertex, its BFS layers, and an exactness scope.

    dist[v] is the distance from the base; spheres maps n to the sorted
    vertices at distance n from the base.  For truncated windows,
    exact_radius bounds the region where sphere queries are honest;
    finite complete graphs use exact_radius = INFINITE.
    """

    graph: Graph
    base: int
    dist: tuple[int, ...]
    spheres: dict[int, tuple[int, ...]]
    truncated: bool = False
    exact_radius: float = INFINITE
    name: str = "graph"
    meta: dict = field(default_factory=dict)
    _sphere_oracle: object = field(default=None, repr=False)
    _bfs_cache: dict = field(default_factory=dict, repr=False)
    cayley: object = field(default=None, repr=False)

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    def label(self, v: int) -> str:
        return self.graph.label(v)

    def to_jsonable(self) -> dict:
        out = {
            "name": self.name,
            "vertices": self.vertex_count,
            "edges": [list(e) for e in self.graph.edges()],
            "base": self.base,
            "truncated": self.truncated,
        }
        if self.truncated:
            out["exact_radius"] = int(self.exact_radius)
        if self.graph.labels is not None:
            out["labels"] = {str(v): self.graph.labels[v] for v in range(self.vertex_count)}
        return out


def make_graph(edge_list, vertex_count=None, labels=None) -> Graph:
    """Validate an undirected edge list and build the adjacency structure."""
    edges = []
    seen = set()
    max_v = -1
    for e in edge_list:
        try:
            u, v = int(e[0]), int(e[1])
        except (TypeError, ValueError, IndexError) as exc:
            raise BadParameter(f"edge {e!r} is not a pair of vertex ids") from exc
        if u < 0 or v < 0:
            raise BadParameter(f"edge {e!r} has a negative vertex id")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"edge {key} listed more than once")
        seen.add(key)
        edges.append(key)
        max_v = max(max_v, u, v)
    n = max_v + 1 if vertex_count is None else int(vertex_count)
    if n <= 0:
        raise BadParameter("graph needs at least one vertex")
    if max_v >= n:
        raise BadParameter(f"edge endpoint {max_v} outside vertex range 0..{n - 1}")
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise BadParameter(f"{len(labels)} labels for {n} vertices")
    return Graph(n, tuple(tuple(sorted(a)) for a in adj), labels)


def bfs_from(graph: Graph, start: int) -> tuple[int, ...]:
    """Distances from start; unreachable vertices get -1."""
    dist = [-1] * graph.vertex_count
    dist[start] = 0
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in graph.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return tuple(dist)


def build_graph(
    edge_list,
    base: int,
    vertex_count=None,
    labels=None,
    name: str = "graph",
    truncated: bool = False,
    exact_radius: float = INFINITE,
) -> PointedGraph:
    """Build a pointed graph, rejecting loops, duplicate edges, and
    disconnection from the base."""
    graph = make_graph(edge_list, vertex_count, labels)
    base = int(base)
    if not 0 <= base < graph.vertex_count:
        raise BadParameter(f"base {base} outside vertex range 0..{graph.vertex_count - 1}")
    dist = bfs_from(graph, base)
    if any(d < 0 for d in dist):
        missing = [v for v, d in enumerate(dist) if d < 0]
        raise DisconnectedGraph(
            f"{len(missing)} vertices unreachable from base {base} (first: {missing[0]})"
        )
    spheres: dict[int, list[int]] = {}
    for v, d in enumerate(dist):
        spheres.setdefault(d, []).append(v)
    sphere_map = {n: tuple(sorted(vs)) for n, vs in spheres.items()}
    if truncated and exact_radius == INFINITE:
        raise BadParameter("truncated graphs need a finite exact_radius")
    return PointedGraph(
        graph=graph,
        base=base,
        dist=dist,
        spheres=sphere_map,
        truncated=truncated,
        exact_radius=exact_radius,
        name=name,
    )


def index_set(pg: PointedGraph) -> tuple[tuple[int, ...], float]:
    """The occupied sphere indices I and their supremum M.

    For truncated windows M is reported as INFINITE: the window only
    bounds the visible part of the index set.
    """
    indices = tuple(sorted(pg.spheres))
    if pg.truncated:
        return indices, INFINITE
    return indices, indices[-1]


def bfs_distances(pg: PointedGraph, v: int) -> tuple[int, ...]:
    """Raw BFS distances from v inside the stored graph (cached).

    On truncated windows these are only guaranteed to equal the distances
    of the ambient infinite graph for targets u with dist(v,u) + min(|v|,|u|)
    inside the exactness scope; callers enforce their own preconditions.
    """
    if v not in pg._bfs_cache:
        if not 0 <= v < pg.vertex_count:
            raise BadParameter(f"vertex {v} outside range 0..{pg.vertex_count - 1}")
        pg._bfs_cache[v] = bfs_from(pg.graph, v)
    return pg._bfs_cache[v]


def sphere_at(pg: PointedGraph, v: int, n: int) -> tuple[int, ...]:
    """The sorted sphere S_n(v).

    On truncated windows requires |v| + n <= exact_radius so the answer
    agrees with the ambient graph; Cayley windows serve spheres by
    translating base spheres, everything else falls back to BFS.
    """
    if not 0 <= v < pg.vertex_count:
        raise BadParameter(f"vertex {v} outside range 0..{pg.vertex_count - 1}")
    if n < 0:
        raise BadParameter(f"sphere index {n} is negative")
    if pg.truncated and pg.dist[v] + n > pg.exact_radius:
        raise RadiusExceeded(
            f"S_{n}({v}) reaches outside the exact region "
            f"(|v|={pg.dist[v]}, exact_radius={pg.exact_radius})"
        )
    if v == pg.base:
        return pg.spheres.get(n, ())
    if pg._sphere_oracle is not None:
        return pg._sphere_oracle(v, n)
    dist = bfs_distances(pg, v)
    return tuple(u for u, d in enumerate(dist) if d == n)


def distance_between(pg: PointedGraph, u: int, v: int) -> int:
    """Distance inside the stored graph (see bfs_distances for scope)."""
    return bfs_distances(pg, u)[v]


@dataclass(frozen=True)
class AssumptionReport:
    """Verdicts for the three standing assumptions.

    condition_iii is the non-degeneracy requirement that the outermost
    occupied base sphere index M is attained from every vertex; it is
    checked on finite complete graphs and reported as vacuous on windows.
    """

    simple: bool
    connected: bool
    locally_finite: bool
    condition_iii: str
    witness: int | None = None

    @property
    def passed(self) -> bool:
        return (
            self.simple
            and self.connected
            and self.locally_finite
            and self.condition_iii in ("pass", "vacuous")
        )

    def to_jsonable(self) -> dict:
        return {
            "simple": self.simple,
            "connected": self.connected,
            "locally_finite": self.locally_finite,
            "condition_iii": self.condition_iii,
            "witness": self.witness,
            "passed": self.passed,
        }


def check_assumptions(pg: PointedGraph) -> AssumptionReport:
    """Re-verify simplicity and connectivity, then test condition (iii):
    every vertex has a nonempty sphere at the top base index M."""
    graph = pg.graph
    simple = True
    for v in range(graph.vertex_count):
        adj = graph.adjacency[v]
        if v in adj or len(set(adj)) != len(adj):
            simple = False
            break
    connected = all(d >= 0 for d in pg.dist)
    locally_finite = True
    if pg.truncated:
        return AssumptionReport(simple, connected, locally_finite, "vacuous")
    top = max(pg.spheres)
    witness = None
    for v in range(graph.vertex_count):
        if max(bfs_distances(pg, v)) < top:
            witness = v
            break
    verdict = "pass" if witness is None else "fail"
    return AssumptionReport(simple, connected, locally_finite, verdict, witness)


def parse_graph_json(data: dict, name: str = "file") -> PointedGraph:
    """Build a pointed graph from the JSON object format:
    {"vertices": n, "edges": [[u,v],...], "base": b, "labels": {...}?}."""
    if not isinstance(data, dict):
        raise BadParameter("graph JSON must be an object")
    for key in ("vertices", "edges", "base"):
        if key not in data:
            raise BadParameter(f"graph JSON missing {key!r}")
    labels = None
    if "labels" in data and data["labels"] is not None:
        raw = data["labels"]
        if not isinstance(raw, dict):
            raise BadParameter("labels must map vertex ids to strings")
        labels = [str(v) for v in range(int(data["vertices"]))]
        for k, text in raw.items():
            idx = int(k)
            if not 0 <= idx < int(data["vertices"]):
                raise BadParameter(f"label for unknown vertex {idx}")
            labels[idx] = str(text)
    truncated = bool(data.get("truncated", False))
    exact_radius = data.get("exact_radius", INFINITE)
    if truncated:
        exact_radius = int(exact_radius)
    return build_graph(
        data["edges"],
        data["base"],
        vertex_count=data["vertices"],
        labels=labels,
        name=str(data.get("name", name)),
        truncated=truncated,
        exact_radius=exact_radius if truncated else INFINITE,
    )


def load_graph_file(path: str) -> PointedGraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise BadParameter(f"cannot read graph file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise BadParameter(f"graph file {path} is not valid JSON: {exc}") from exc
    return parse_graph_json(data, name=path)
