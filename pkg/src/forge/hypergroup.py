"""Structure constants of a pointed graph and the hypergroup axioms.

For a pointed graph with base spheres S_n = S_n(v0), the product of the
formal elements x_i, x_j is the probability vector

    p[i,j][k] = (1 / |S_i|) * sum over v in S_i of |S_j(v) ∩ S_k| / |S_j(v)|

computed here in exact rational arithmetic.  The family always satisfies
the unit law, the support bound |i-j| <= k <= i+j, hermiticity
(p[i,j][0] != 0 iff i = j), and row-stochasticity; commutativity and
associativity can fail, and classify() decides them within a bound.

Separate checks cover the two sphere-regularity conditions (constant
sphere sizes; constant sphere intersections), full distance regularity,
and the translation from distance-regular intersection numbers to
structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadParameter,
    EmptySphere,
    IndexOutOfRange,
    NotFinite,
    RadiusExceeded,
)
from .graphs import PointedGraph, bfs_distances, sphere_at


@dataclass(frozen=True)
class ProbabilityVector:
    """Finitely supported probability vector over sphere indices."""

    items: tuple[tuple[int, Fraction], ...]

    @classmethod
    def from_pairs(cls, pairs) -> "ProbabilityVector":
        acc: dict[int, Fraction] = {}
        for k, w in pairs:
            if w:
                acc[k] = acc.get(k, Fraction(0)) + w
        items = tuple(sorted((k, w) for k, w in acc.items() if w))
        total = sum((w for _, w in items), Fraction(0))
        if any(w < 0 for _, w in items) or total != 1:
            raise BadParameter(f"not a probability vector (total {total})")
        return cls(items)

    @classmethod
    def point(cls, k: int) -> "ProbabilityVector":
        return cls(((k, Fraction(1)),))

    @staticmethod
    def combine(terms) -> "ProbabilityVector":
        """Convex combination: terms is an iterable of (weight, vector)."""
        pairs = []
        for w, vec in terms:
            if not w:
                continue
            pairs.extend((k, w * c) for k, c in vec.items)
        return ProbabilityVector.from_pairs(pairs)

    def coefficient(self, k: int) -> Fraction:
        for idx, w in self.items:
            if idx == k:
                return w
        return Fraction(0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.items)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.items)

    def to_jsonable(self) -> dict:
        return {str(k): w for k, w in self.items}


def sphere_sizes(pg: PointedGraph) -> tuple[int, ...]:
    return tuple(len(pg.spheres[n]) for n in sorted(pg.spheres))


def _validate_index(pg: PointedGraph, n: int, what: str) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise BadParameter(f"{what} must be an integer, got {n!r}")
    if n < 0:
        raise BadParameter(f"{what} must be >= 0, got {n}")
    if not pg.truncated and n not in pg.spheres:
        top = max(pg.spheres)
        raise IndexOutOfRange(f"{what}={n} outside the index set 0..{top}")
    return n


def structure_constant(pg: PointedGraph, i: int, j: int, k: int) -> Fraction:
    """The exact coefficient p[i,j][k].

    On truncated windows requires i + j <= exact_radius so every sphere
    involved is ambient-exact.  Indices with k outside [|i-j|, i+j] give
    0 by the triangle inequality without touching the graph.
    """
    _validate_index(pg, i, "i")
    _validate_index(pg, j, "j")
    _validate_index(pg, k, "k")
    if k > i + j or k < abs(i - j):
        return Fraction(0)
    if pg.truncated and i + j > pg.exact_radius:
        raise RadiusExceeded(
            f"p[{i},{j}] needs i+j <= exact_radius={pg.exact_radius}"
        )
    return product(pg, i, j).coefficient(k)


def product(pg: PointedGraph, i: int, j: int) -> ProbabilityVector:
    """The full product row x_i o x_j as a probability vector."""
    _validate_index(pg, i, "i")
    _validate_index(pg, j, "j")
    if pg.truncated and i + j > pg.exact_radius:
        raise RadiusExceeded(
            f"x_{i} o x_{j} needs i+j <= exact_radius={pg.exact_radius}"
        )
    base_sphere = pg.spheres.get(i, ())
    if not base_sphere:
        raise EmptySphere(f"S_{i}(base) is empty")
    size_i = len(base_sphere)
    acc: dict[int, Fraction] = {}
    for v in base_sphere:
        ball = sphere_at(pg, v, j)
        if not ball:
            raise EmptySphere(f"S_{j}({v}) is empty; the product is undefined")
        unit = Fraction(1, size_i * len(ball))
        for u in ball:
            k = pg.dist[u]
            acc[k] = acc.get(k, Fraction(0)) + unit
    vec = ProbabilityVector.from_pairs(acc.items())
    lo, hi = abs(i - j), i + j
    assert all(lo <= k <= hi for k in vec.support)
    assert (vec.coefficient(0) != 0) == (i == j)
    return vec


class StructureTable:
    """Cached products x_i o x_j for i, j up to a bound.

    Rows beyond the bound are computed lazily when the underlying graph
    can still certify them; tables derived from intersection numbers have
    no graph and serve only their precomputed rows.
    """

    def __init__(self, pg: PointedGraph | None, bound: int, rows: dict):
        self.pg = pg
        self.bound = bound
        self.rows = rows

    def row(self, i: int, j: int) -> ProbabilityVector:
        if i > self.bound or j > self.bound or i < 0 or j < 0:
            raise IndexOutOfRange(f"row ({i},{j}) outside bound {self.bound}")
        return self.rows[(i, j)]

    def entry(self, i: int, j: int, k: int) -> Fraction:
        return self.row(i, j).coefficient(k)

    def row_extended(self, i: int, j: int) -> ProbabilityVector:
        """Row lookup allowed past the bound, certified per entry."""
        key = (i, j)
        if key in self.rows:
            return self.rows[key]
        if self.pg is None:
            raise IndexOutOfRange(
                f"row ({i},{j}) outside bound {self.bound} of a graph-free table"
            )
        vec = product(self.pg, i, j)
        self.rows[key] = vec
        return vec

    @property
    def indices(self) -> range:
        return range(self.bound + 1)

    def same_entries(self, other: "StructureTable") -> bool:
        bound = min(self.bound, other.bound)
        return all(
            self.row(i, j) == other.row(i, j)
            for i in range(bound + 1)
            for j in range(bound + 1)
        )

    def to_jsonable(self) -> dict:
        return {
            "bound": self.bound,
            "graph": self.pg.name if self.pg is not None else None,
            "rows": {f"{i},{j}": self.rows[(i, j)] for (i, j) in sorted(self.rows)},
        }


def build_table(pg: PointedGraph, bound: int | None = None) -> StructureTable:
    """Compute all products with i, j <= bound.

    Finite graphs default to the full index set; truncated windows
    require 2 * bound <= exact_radius so every row is ambient-exact.
    """
    if bound is None:
        if pg.truncated:
            bound = int(pg.exact_radius) // 2
        else:
            bound = max(pg.spheres)
    if bound < 0:
        raise BadParameter("bound must be >= 0")
    if pg.truncated:
        if 2 * bound > pg.exact_radius:
            raise RadiusExceeded(
                f"bound {bound} needs 2*bound <= exact_radius={pg.exact_radius}"
            )
    elif bound > max(pg.spheres):
        raise IndexOutOfRange(f"bound {bound} exceeds the top index {max(pg.spheres)}")
    rows = {}
    for i in range(bound + 1):
        for j in range(bound + 1):
            rows[(i, j)] = product(pg, i, j)
    for n in range(bound + 1):
        assert rows[(0, n)] == ProbabilityVector.point(n)
        assert rows[(n, 0)] == ProbabilityVector.point(n)
    return StructureTable(pg, bound, rows)


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple[int, ...]
    lhs: Fraction | None
    rhs: Fraction | None

    def to_jsonable(self) -> dict:
        return {
            "kind": self.kind,
            "indices": list(self.indices),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass(frozen=True)
class ClassificationReport:
    """Hypergroup vs pre-hypergroup verdict within a bound.

    skipped_triples counts associativity triples a truncated window could
    not certify; associative refers to the certified scope only.
    """

    verdict: str
    commutative: bool
    associative: bool
    bound: int
    witness: Violation | None
    skipped_triples: int = 0

    def to_jsonable(self) -> dict:
        return {
            "verdict": self.verdict,
            "commutative": self.commutative,
            "associative": self.associative,
            "bound": self.bound,
            "witness": self.witness,
            "skipped_triples": self.skipped_triples,
        }


def _first_difference(lhs: ProbabilityVector, rhs: ProbabilityVector):
    for k in sorted(set(lhs.support) | set(rhs.support)):
        if lhs.coefficient(k) != rhs.coefficient(k):
            return k
    return None


def associativity_defect(table: StructureTable, h: int, i: int, j: int):
    """Both sides of (x_h o x_i) o x_j = x_h o (x_i o x_j)."""
    left = ProbabilityVector.combine(
        (table.entry(h, i, l), table.row_extended(l, j))
        for l in table.row(h, i).support
    )
    right = ProbabilityVector.combine(
        (table.entry(i, j, l), table.row_extended(h, l))
        for l in table.row(i, j).support
    )
    return left, right


def classify(table: StructureTable) -> ClassificationReport:
    """Decide commutativity and associativity for indices up to the bound.

    Scans are lexicographic and the first violation of the first failing
    axiom (commutativity scanned first) becomes the witness.  On windows,
    associativity triples whose sums leave the exact region are skipped
    and counted instead of silently passing.
    """
    witness = None
    commutative = True
    for i in table.indices:
        for j in table.indices:
            if i >= j:
                continue
            k = _first_difference(table.row(i, j), table.row(j, i))
            if k is not None:
                commutative = False
                if witness is None:
                    witness = Violation(
                        "commutativity",
                        (i, j, k),
                        table.entry(i, j, k),
                        table.entry(j, i, k),
                    )
                break
        if not commutative:
            break
    associative = True
    skipped = 0
    assoc_witness = None
    for h in table.indices:
        for i in table.indices:
            for j in table.indices:
                try:
                    left, right = associativity_defect(table, h, i, j)
                except RadiusExceeded:
                    skipped += 1
                    continue
                k = _first_difference(left, right)
                if k is not None:
                    associative = False
                    if assoc_witness is None:
                        assoc_witness = Violation(
                            "associativity",
                            (h, i, j, k),
                            left.coefficient(k),
                            right.coefficient(k),
                        )
                    break
            if not associative:
                break
        if not associative:
            break
    if witness is None:
        witness = assoc_witness
    verdict = "Hypergroup" if commutative and associative else "PreHypergroupOnly"
    return ClassificationReport(verdict, commutative, associative, table.bound, witness, skipped)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one sphere-regularity condition over a stated scope."""

    condition: str
    passed: bool
    witness: tuple | None
    scope: str
    checked: int

    def to_jsonable(self) -> dict:
        return {
            "condition": self.condition,
            "passed": self.passed,
            "witness": list(self.witness) if self.witness else None,
            "scope": self.scope,
            "checked": self.checked,
        }


def check_S1(pg: PointedGraph) -> ConditionReport:
    """Does |S_i(v)| depend only on i?  Windows check every pair with
    |v| + i inside the exact radius."""
    checked = 0
    if pg.truncated:
        radius = int(pg.exact_radius)
        scope = f"i >= 1, vertices with |v| + i <= {radius}"
        indices = range(1, radius + 1)
    else:
        radius = None
        scope = "all vertices, every index"
        indices = sorted(pg.spheres)
    for i in indices:
        expected = len(pg.spheres.get(i, ()))
        for v in range(pg.vertex_count):
            if pg.truncated and pg.dist[v] + i > radius:
                continue
            size = len(sphere_at(pg, v, i))
            checked += 1
            if size != expected:
                witness = (i, pg.label(v), size, expected)
                return ConditionReport("S1", False, witness, scope, checked)
    return ConditionReport("S1", True, None, scope, checked)


def check_S2(pg: PointedGraph) -> ConditionReport:
    """Is |S_i(v) ∩ S_j(base)| constant over v in S_k(base)?"""
    checked = 0
    if pg.truncated:
        radius = int(pg.exact_radius)
        scope = f"triples with k + i <= {radius}, j <= k + i"
        k_range = [n for n in sorted(pg.spheres) if n <= radius]
    else:
        radius = None
        scope = "all index triples and vertices"
        k_range = sorted(pg.spheres)
    for k in k_range:
        i_range = (
            range(0, radius - k + 1) if pg.truncated else sorted(pg.spheres)
        )
        for i in i_range:
            j_range = range(0, k + i + 1) if pg.truncated else sorted(pg.spheres)
            for j in j_range:
                expected = None
                ref_vertex = None
                for v in pg.spheres[k]:
                    ball = sphere_at(pg, v, i)
                    count = sum(1 for u in ball if pg.dist[u] == j)
                    checked += 1
                    if expected is None:
                        expected, ref_vertex = count, v
                    elif count != expected:
                        witness = (
                            i,
                            j,
                            k,
                            pg.label(ref_vertex),
                            expected,
                            pg.label(v),
                            count,
                        )
                        return ConditionReport("S2", False, witness, scope, checked)
    return ConditionReport("S2", True, None, scope, checked)


@dataclass(frozen=True)
class DRReport:
    """Distance regularity verdict with the intersection numbers on success."""

    passed: bool
    diameter: int
    intersection_numbers: dict | None
    witness: tuple | None

    def to_jsonable(self) -> dict:
        numbers = None
        if self.intersection_numbers is not None:
            numbers = {
                f"{i},{j},{k}": n
                for (i, j, k), n in sorted(self.intersection_numbers.items())
            }
        return {
            "passed": self.passed,
            "diameter": self.diameter,
            "intersection_numbers": numbers,
            "witness": list(self.witness) if self.witness else None,
        }


def check_distance_regular(pg: PointedGraph) -> DRReport:
    """Are the counts |{x : d(v,x)=i, d(x,w)=j}| functions of d(v,w) alone?

    Finite graphs only: the verdict on a truncated window would describe
    the window rather than the ambient graph.
    """
    if pg.truncated:
        raise NotFinite("distance regularity is only decided on finite graphs")
    n = pg.vertex_count
    dist = [bfs_distances(pg, v) for v in range(n)]
    diameter = max(max(row) for row in dist)
    reference: dict[int, dict] = {}
    ref_pair: dict[int, tuple] = {}
    for v in range(n):
        for w in range(n):
            k = dist[v][w]
            counts: dict[tuple[int, int], int] = {}
            for x in range(n):
                key = (dist[v][x], dist[x][w])
                counts[key] = counts.get(key, 0) + 1
            if k not in reference:
                reference[k] = counts
                ref_pair[k] = (v, w)
                continue
            if counts != reference[k]:
                diff = sorted(set(counts) ^ set(reference[k]))
                if not diff:
                    diff = sorted(
                        key for key in counts if counts[key] != reference[k][key]
                    )
                i, j = diff[0]
                witness = (
                    k,
                    pg.label(ref_pair[k][0]),
                    pg.label(ref_pair[k][1]),
                    pg.label(v),
                    pg.label(w),
                    i,
                    j,
                    reference[k].get((i, j), 0),
                    counts.get((i, j), 0),
                )
                return DRReport(False, diameter, None, witness)
    numbers = {
        (i, j, k): count
        for k, counts in reference.items()
        for (i, j), count in counts.items()
    }
    return DRReport(True, diameter, numbers, None)


def q_to_p(report: DRReport) -> StructureTable:
    """Structure constants from distance-regular intersection numbers:
    p[i,j][k] = Q[j,k | i] / Q[j,j | 0]."""
    if not report.passed or report.intersection_numbers is None:
        raise BadParameter("q_to_p needs a passing distance-regularity report")
    q = report.intersection_numbers
    d = report.diameter
    rows = {}
    for i in range(d + 1):
        for j in range(d + 1):
            den = q.get((j, j, 0), 0)
            if den == 0:
                raise BadParameter(f"no sphere of radius {j} in the intersection numbers")
            pairs = []
            for k in range(d + 1):
                num = q.get((j, k, i), 0)
                if num:
                    pairs.append((k, Fraction(num, den)))
            rows[(i, j)] = ProbabilityVector.from_pairs(pairs)
    return StructureTable(None, d, rows)
