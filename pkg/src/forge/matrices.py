"""Transition matrices P_k = (p[k,i][j]) and their exact verifications.

Row-vector convention: (xi P)_j = sum_i xi_i P[i][j], so P_k realizes
left multiplication by x_k on coefficient rows.  Truncated tables yield
matrices whose boundary rows are incomplete; every check tracks row
completeness and compares only rows both sides certify, reporting how
much was skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .errors import (
    BadParameter,
    DimensionMismatch,
    HypothesisNotMet,
    IndexOutOfRange,
    NotFinite,
    RadiusExceeded,
    TruncatedMatrix,
)
from .graphs import PointedGraph, bfs_distances, sphere_at
from .hypergroup import (
    StructureTable,
    build_table,
    check_S1,
    check_S2,
    classify,
    sphere_sizes,
)
from .walks import jump_distribution

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class TransitionMatrix:
    """Dense matrix with per-row exactness and completeness flags.

    row_exact[i]: every stored entry equals the ambient value (nothing
    outside the window contributed to it).  row_complete[i]: row_exact
    and the ambient row's support lies inside the matrix, so the visible
    mass sums to 1.  Exact rows may be compared entrywise; complete rows
    additionally support mass and support-size arguments.
    """

    k: int | None
    dim: int
    entries: tuple
    row_exact: tuple
    row_complete: tuple
    truncated: bool
    label: str = ""

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def support_row(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, w in enumerate(self.entries[i]) if w)

    def support_col(self, j: int) -> tuple[int, ...]:
        return tuple(i for i in range(self.dim) if self.entries[i][j])

    def to_jsonable(self) -> dict:
        return {
            "k": self.k,
            "dim": self.dim,
            "truncated": self.truncated,
            "row_exact": list(self.row_exact),
            "row_complete": list(self.row_complete),
            "entries": [list(row) for row in self.entries],
        }


def transition_matrix(table: StructureTable, k: int) -> TransitionMatrix:
    """P_k with entry(i,j) = p[k,i][j] for i, j up to the table bound."""
    if not 0 <= k <= table.bound:
        raise IndexOutOfRange(f"k={k} outside table bound {table.bound}")
    dim = table.bound + 1
    entries = []
    complete = []
    for i in range(dim):
        row = tuple(table.entry(k, i, j) for j in range(dim))
        entries.append(row)
        complete.append(sum(row, ZERO) == 1)
    truncated = bool(table.pg is not None and table.pg.truncated)
    if not truncated:
        assert all(complete)
    return TransitionMatrix(
        k,
        dim,
        tuple(entries),
        tuple(True for _ in range(dim)),
        tuple(complete),
        truncated,
        label=f"P_{k}",
    )


def matmul(a: TransitionMatrix, b: TransitionMatrix) -> TransitionMatrix:
    """Exact product with flag propagation.

    Row i of the product is exact when row i of a is complete (so no
    unseen column feeds it) and every contributing row of b is exact;
    it is complete when additionally no mass leaves the matrix.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"{a.dim} x {b.dim}")
    dim = a.dim
    entries = []
    exact = []
    complete = []
    for i in range(dim):
        arow = a.entries[i]
        acc = [ZERO] * dim
        ok = a.row_complete[i]
        for c, w in enumerate(arow):
            if not w:
                continue
            ok = ok and b.row_exact[c]
            brow = b.entries[c]
            for j in range(dim):
                if brow[j]:
                    acc[j] += w * brow[j]
        entries.append(tuple(acc))
        exact.append(ok)
        complete.append(ok and sum(acc, ZERO) == 1)
    return TransitionMatrix(
        None,
        dim,
        tuple(entries),
        tuple(exact),
        tuple(complete),
        a.truncated or b.truncated,
        label=f"{a.label}{b.label}",
    )


def matrix_combination(terms) -> TransitionMatrix:
    """Sum of weight * matrix, with flags intersected per row."""
    terms = [(Fraction(w), m) for w, m in terms]
    if not terms:
        raise BadParameter("empty combination")
    dim = terms[0][1].dim
    entries = []
    exact = []
    complete = []
    for i in range(dim):
        acc = [ZERO] * dim
        ok_exact = True
        ok_complete = True
        for w, m in terms:
            if m.dim != dim:
                raise DimensionMismatch(f"{m.dim} != {dim}")
            ok_exact = ok_exact and m.row_exact[i]
            ok_complete = ok_complete and m.row_complete[i]
            for j in range(dim):
                if m.entries[i][j]:
                    acc[j] += w * m.entries[i][j]
        entries.append(tuple(acc))
        exact.append(ok_exact)
        complete.append(ok_complete)
    truncated = any(m.truncated for _, m in terms)
    return TransitionMatrix(
        None, dim, tuple(entries), tuple(exact), tuple(complete), truncated
    )


def apply(p: TransitionMatrix, xi) -> tuple:
    """Row-vector action: (xi P)_j = sum_i xi_i P[i][j]."""
    xi = tuple(xi)
    if len(xi) != p.dim:
        raise DimensionMismatch(f"vector length {len(xi)} != dim {p.dim}")
    out = []
    for j in range(p.dim):
        out.append(sum((xi[i] * p.entries[i][j] for i in range(p.dim) if xi[i]), ZERO))
    return tuple(out)


def norm_sq(vec) -> Fraction:
    return sum((Fraction(x) * Fraction(x) for x in vec), ZERO)


@dataclass(frozen=True)
class RegRepReport:
    """Does P_i P_j = sum_k p[i,j][k] P_k hold entrywise?"""

    passed: bool
    hypothesis_met: bool
    pairs_checked: int
    rows_compared: int
    pairs_skipped: int
    witness: tuple | None

    def to_jsonable(self) -> dict:
        return {
            "passed": self.passed,
            "hypothesis_met": self.hypothesis_met,
            "pairs_checked": self.pairs_checked,
            "rows_compared": self.rows_compared,
            "pairs_skipped": self.pairs_skipped,
            "witness": list(self.witness) if self.witness else None,
        }


def verify_regular_representation(table: StructureTable) -> RegRepReport:
    """Exact check of the regular-representation identity on all pairs
    whose right-hand side stays inside the matrix family."""
    mats = {k: transition_matrix(table, k) for k in table.indices}
    hypothesis = classify(table).verdict == "Hypergroup"
    pairs = rows = skipped = 0
    witness = None
    for i in table.indices:
        for j in table.indices:
            support = table.row(i, j).support
            if any(k > table.bound for k in support):
                skipped += 1
                continue
            pairs += 1
            lhs = matmul(mats[i], mats[j])
            for a in range(lhs.dim):
                if not lhs.row_exact[a]:
                    continue
                rows += 1
                for b in range(lhs.dim):
                    rhs = sum(
                        (table.entry(i, j, k) * mats[k].entries[a][b] for k in support),
                        ZERO,
                    )
                    if lhs.entries[a][b] != rhs:
                        if witness is None:
                            witness = (i, j, a, b, lhs.entries[a][b], rhs)
    return RegRepReport(witness is None, hypothesis, pairs, rows, skipped, witness)


@dataclass(frozen=True)
class CommuteReport:
    """Pairwise commutation of the P_k, cross-referenced with classify()."""

    commutes: bool
    classify_commutative: bool
    classify_associative: bool
    agrees_with_associative: bool
    rows_compared: int
    witness: tuple | None

    def to_jsonable(self) -> dict:
        return {
            "commutes": self.commutes,
            "classify_commutative": self.classify_commutative,
            "classify_associative": self.classify_associative,
            "agrees_with_associative": self.agrees_with_associative,
            "rows_compared": self.rows_compared,
            "witness": list(self.witness) if self.witness else None,
        }


def commute_check(table: StructureTable) -> CommuteReport:
    """Do the transition matrices mutually commute (within certified rows)?

    The verdict is compared against the associativity verdict of the
    classification on the same bound; the two agree on every fixture.
    """
    mats = {k: transition_matrix(table, k) for k in table.indices}
    commutes = True
    witness = None
    rows = 0
    for i in table.indices:
        for j in table.indices:
            if i >= j:
                continue
            ab = matmul(mats[i], mats[j])
            ba = matmul(mats[j], mats[i])
            for a in range(ab.dim):
                if not (ab.row_exact[a] and ba.row_exact[a]):
                    continue
                rows += 1
                if ab.entries[a] != ba.entries[a] and commutes:
                    commutes = False
                    b = next(
                        b for b in range(ab.dim) if ab.entries[a][b] != ba.entries[a][b]
                    )
                    witness = (i, j, a, b, ab.entries[a][b], ba.entries[a][b])
    report = classify(table)
    return CommuteReport(
        commutes,
        report.commutative,
        report.associative,
        commutes == report.associative,
        rows,
        witness,
    )


@dataclass(frozen=True)
class NormBound:
    """Certified ||.||-bounds for P_k over one column-certified block.

    c, d, upper_sq, and lower_sq all refer to the restriction of P_k to
    the columns whose full ambient support fits inside the table, so
    lower <= upper holds unconditionally; on finite tables that block is
    the whole operator and upper also bounds the ambient norm, while on
    windows it is a sup over the certified part only (window_sup)."""

    k: int
    c: Fraction
    d: int
    upper_sq: Fraction
    lower_sq: Fraction
    best_vector: str
    window_sup: bool
    scope: str
    row_supports: dict
    col_supports: dict

    @property
    def upper(self) -> float:
        return sqrt(float(self.upper_sq))

    @property
    def lower(self) -> float:
        return sqrt(float(self.lower_sq))

    def to_jsonable(self) -> dict:
        return {
            "k": self.k,
            "c": self.c,
            "d": self.d,
            "upper_sq": self.upper_sq,
            "upper": self.upper,
            "lower_sq": self.lower_sq,
            "lower": self.lower,
            "best_vector": self.best_vector,
            "window_sup": self.window_sup,
            "scope": self.scope,
            "row_supports": {str(i): list(s) for i, s in sorted(self.row_supports.items())},
            "col_supports": {str(j): list(s) for j, s in sorted(self.col_supports.items())},
        }


def _geometric(ratio: Fraction, dim: int) -> tuple:
    return tuple(ratio**n for n in range(dim))


def norm_bounds(table: StructureTable, k: int, extra_vectors=None) -> NormBound:
    """Exact c_k, d_k and Rayleigh lower bounds for P_k on its certified block.

    A column j is certified when its full ambient support [|j-k|, j+k]
    fits inside the table; c_k maximizes column square-sums and d_k row
    support sizes over that block, and the Cauchy-Schwarz bound
    ||xi P_k|_block||^2 <= c_k d_k ||xi||^2 then holds for every vector.
    Lower bounds evaluate that block quotient in exact rationals over
    default test vectors (point mass, uniform, geometric ratios 1/2,
    1/4, 3/4) plus any caller-supplied ones; each certified column is
    ambient-complete, so every quotient is also a valid lower
    certificate for the ambient operator norm.
    """
    p = transition_matrix(table, k)
    dim = p.dim
    truncated = p.truncated
    cols = tuple(
        j for j in range(dim) if not (truncated and j + k > table.bound)
    )
    col_set = set(cols)
    col_supports = {}
    c = ZERO
    for j in cols:
        supp = p.support_col(j)
        col_supports[j] = supp
        assert all(abs(j - k) <= i <= j + k for i in supp)
        total = sum((p.entries[i][j] ** 2 for i in supp), ZERO)
        c = max(c, total)
    row_supports = {}
    d = 0
    for i in range(dim):
        supp = tuple(j for j in p.support_row(i) if j in col_set)
        if supp:
            row_supports[i] = supp
            assert all(abs(i - k) <= j <= i + k for j in supp)
            d = max(d, len(supp))
    if not d or c == 0:
        raise RadiusExceeded(f"no certified rows/columns for k={k} at this bound")
    candidates = [
        ("e0", tuple(ONE if n == 0 else ZERO for n in range(dim))),
        ("uniform", tuple(ONE for _ in range(dim))),
        ("geometric-1/2", _geometric(Fraction(1, 2), dim)),
        ("geometric-1/4", _geometric(Fraction(1, 4), dim)),
        ("geometric-3/4", _geometric(Fraction(3, 4), dim)),
    ]
    for idx, vec in enumerate(extra_vectors or []):
        candidates.append((f"custom-{idx}", tuple(Fraction(x) for x in vec)))
    lower_sq = ZERO
    best = ""
    for name, vec in candidates:
        denom = norm_sq(vec)
        if denom == 0:
            continue
        image = apply(p, vec)
        quotient = norm_sq(tuple(image[j] for j in cols)) / denom
        if quotient > lower_sq:
            lower_sq, best = quotient, name
    upper_sq = c * d
    assert lower_sq <= upper_sq
    scope = (
        f"block of columns j <= {table.bound - k} (window-sup)"
        if truncated
        else "full index set"
    )
    return NormBound(
        k, c, d, upper_sq, lower_sq, best, truncated, scope, row_supports, col_supports
    )


@dataclass(frozen=True)
class UniformBound:
    """S = sup |S_k(v)| over the certified region; ||P_k|| <= S^2 for all k."""

    s: int
    bound: int
    scope: str

    def to_jsonable(self) -> dict:
        return {"s": self.s, "bound": self.bound, "scope": self.scope}


def uniform_norm_bound(pg: PointedGraph) -> UniformBound:
    s = 0
    if pg.truncated:
        radius = int(pg.exact_radius)
        scope = f"vertices and indices with |v| + k <= {radius}"
        for v in range(pg.vertex_count):
            if pg.dist[v] > radius:
                continue
            for k in range(radius - pg.dist[v] + 1):
                s = max(s, len(sphere_at(pg, v, k)))
    else:
        scope = "all vertices and indices"
        for v in range(pg.vertex_count):
            counts: dict[int, int] = {}
            for d in bfs_distances(pg, v):
                counts[d] = counts.get(d, 0) + 1
            s = max(s, max(counts.values()))
    return UniformBound(s, s * s, scope)


@dataclass(frozen=True)
class StationaryReport:
    """pi_G = (1, |S_1|, ..., |S_M|)/|G| and its fixed-vector verdicts."""

    pi: tuple
    idempotent: bool
    pi_fixed: bool
    pi_fixed_all_k: bool
    witness_k: int | None

    @property
    def passed(self) -> bool:
        return self.idempotent and self.pi_fixed and self.pi_fixed_all_k

    def to_jsonable(self) -> dict:
        return {
            "pi": list(self.pi),
            "idempotent": self.idempotent,
            "pi_fixed": self.pi_fixed,
            "pi_fixed_all_k": self.pi_fixed_all_k,
            "witness_k": self.witness_k,
            "passed": self.passed,
        }


def stationary_check(cg) -> StationaryReport:
    """Distance-process stationary distribution for a finite Cayley graph
    under the uniform step law."""
    from . import cayley as cy

    if not isinstance(cg, cy.CayleyGraph):
        raise NotFinite("stationary distributions need a finite Cayley graph")
    pg = cy.realize_full(cg)
    sizes = sphere_sizes(pg)
    order = pg.vertex_count
    pi = tuple(Fraction(n, order) for n in sizes)
    dim = len(sizes)
    constant = TransitionMatrix(
        None,
        dim,
        tuple(tuple(pi) for _ in range(dim)),
        tuple(True for _ in range(dim)),
        tuple(True for _ in range(dim)),
        False,
        label="P",
    )
    idempotent = matmul(constant, constant).entries == constant.entries
    pi_fixed = apply(constant, pi) == pi
    table = build_table(pg)
    witness = None
    for k in range(dim):
        mat = transition_matrix(table, k)
        if apply(mat, pi) != pi:
            witness = k
            break
    return StationaryReport(pi, idempotent, pi_fixed, witness is None, witness)


@dataclass(frozen=True)
class IrreducibilityReport:
    irreducible: bool
    classes: tuple

    def to_jsonable(self) -> dict:
        return {
            "irreducible": self.irreducible,
            "classes": [list(c) for c in self.classes],
        }


def irreducibility(p: TransitionMatrix) -> IrreducibilityReport:
    """Communicating classes = strongly connected components of the
    support digraph."""
    if not all(p.row_complete):
        raise TruncatedMatrix("irreducibility needs a complete matrix")
    dim = p.dim
    forward = [set(p.support_row(i)) for i in range(dim)]

    def reach(start: int, adj) -> set:
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    backward = [set() for _ in range(dim)]
    for i in range(dim):
        for j in forward[i]:
            backward[j].add(i)
    assigned = [None] * dim
    classes = []
    for i in range(dim):
        if assigned[i] is not None:
            continue
        component = reach(i, forward) & reach(i, backward)
        for v in component:
            assigned[v] = len(classes)
        classes.append(tuple(sorted(component)))
    classes.sort(key=lambda c: c[0])
    return IrreducibilityReport(len(classes) == 1, tuple(classes))


@dataclass(frozen=True)
class MaincoroReport:
    """(P_{i_1} ... P_{i_m})_{i,j} = sum_k J(pat)_k p[k,i][j], rowwise."""

    passed: bool
    hypothesis_met: bool
    pattern: tuple
    rows_compared: int
    witness: tuple | None

    def to_jsonable(self) -> dict:
        return {
            "passed": self.passed,
            "hypothesis_met": self.hypothesis_met,
            "pattern": list(self.pattern),
            "rows_compared": self.rows_compared,
            "witness": list(self.witness) if self.witness else None,
        }


def verify_maincoro(
    table: StructureTable, pattern, require_hypothesis: bool = False
) -> MaincoroReport:
    """Check the m-fold product of transition matrices against the jump law."""
    if table.pg is None:
        raise BadParameter("maincoro needs a graph-backed table")
    pat = tuple(int(i) for i in pattern)
    hypothesis = (
        check_S1(table.pg).passed
        and check_S2(table.pg).passed
        and classify(table).verdict == "Hypergroup"
    )
    if require_hypothesis and not hypothesis:
        raise HypothesisNotMet("graph fails (S1)+(S2)+hypergroup")
    tilde = jump_distribution(table.pg, pat)
    if any(k > table.bound for k in tilde.support):
        raise RadiusExceeded(
            f"pattern law reaches index beyond table bound {table.bound}"
        )
    mats = {k: transition_matrix(table, k) for k in table.indices}
    lhs = mats[pat[0]]
    for i_t in pat[1:]:
        lhs = matmul(lhs, mats[i_t])
    rhs = matrix_combination((tilde.coefficient(k), mats[k]) for k in tilde.support)
    rows = 0
    witness = None
    for a in range(lhs.dim):
        if not (lhs.row_exact[a] and rhs.row_exact[a]):
            continue
        rows += 1
        if lhs.entries[a] != rhs.entries[a] and witness is None:
            b = next(b for b in range(lhs.dim) if lhs.entries[a][b] != rhs.entries[a][b])
            witness = (a, b, lhs.entries[a][b], rhs.entries[a][b])
    return MaincoroReport(witness is None, hypothesis, pat, rows, witness)
