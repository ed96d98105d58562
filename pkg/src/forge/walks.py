"""m-fold products and the distance process of the sphere walk.

Three routes to the law of |v_1 ... v_m| are computed and cross-checked:
the left-nested algebra product PL over a structure table, the exact
jump-distribution DP J over vertex distributions, and (on Cayley graphs)
the literal conditional probability by tuple enumeration or Monte-Carlo
sampling.  The joint law of the distance process Z_n = |X_n| under a
per-element step distribution alpha supports Markov and i.i.d. checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product as iter_product
from math import sqrt

import numpy as np

from . import cayley as cy
from .errors import (
    BadParameter,
    EmptySphere,
    EnumerationCapExceeded,
    IndexOutOfRange,
    NotCayley,
    NotFinite,
    PatternCapExceeded,
    RadiusExceeded,
    ZeroProbabilityCondition,
)
from .graphs import PointedGraph, sphere_at
from .hypergroup import (
    ProbabilityVector,
    StructureTable,
    build_table,
    check_S2,
    sphere_sizes,
)

ENUMERATION_CAP = 10**8
PATTERN_CAP = 10**6
PATTERN_LENGTH_CAP = 64
Z99 = 2.5758293035489004


def validate_pattern(pattern, top_index: float) -> tuple[int, ...]:
    """Normalize a jump pattern and bound-check each index."""
    pat = tuple(int(i) for i in pattern)
    if not pat:
        raise BadParameter("pattern must have at least one index")
    if len(pat) > PATTERN_LENGTH_CAP:
        raise BadParameter(f"pattern longer than the cap {PATTERN_LENGTH_CAP}")
    for i in pat:
        if i < 0 or i > top_index:
            raise IndexOutOfRange(f"pattern index {i} outside 0..{top_index}")
    return pat


def _table_top(table: StructureTable) -> int:
    return table.bound


def left_nested_product(
    table: StructureTable, pattern, extended: bool = False
) -> ProbabilityVector:
    """PL(i_1,...,i_m): fold the table product from the left.

    Intermediate supports must stay within the table bound; the final
    support may exceed it.  With extended=True, rows past the bound are
    computed lazily as long as the graph can still certify them, which
    the permutation-invariance comparison needs.
    """
    pat = validate_pattern(pattern, _table_top(table))
    acc = ProbabilityVector.point(pat[0])
    for t, i_t in enumerate(pat[1:], start=2):
        if not extended:
            for l in acc.support:
                if l > table.bound:
                    raise RadiusExceeded(
                        f"intermediate support index {l} exceeds bound {table.bound} "
                        f"before step {t}"
                    )
        acc = ProbabilityVector.combine(
            (acc.coefficient(l), table.row_extended(l, i_t)) for l in acc.support
        )
    return acc


def jump_distribution(pg: PointedGraph, pattern) -> ProbabilityVector:
    """J(i_1,...,i_m): exact law of the end distance of the sphere walk.

    Dynamic program over vertex distributions: mu_0 is a point mass at
    the base and each step spreads mass uniformly over S_{i_t}(v).
    """
    top = pg.exact_radius if pg.truncated else max(pg.spheres)
    pat = validate_pattern(pattern, top)
    if pg.truncated and sum(pat) > pg.exact_radius:
        raise RadiusExceeded(
            f"pattern sum {sum(pat)} exceeds exact_radius {pg.exact_radius}"
        )
    mu: dict[int, Fraction] = {pg.base: Fraction(1)}
    for i_t in pat:
        nxt: dict[int, Fraction] = {}
        for v, mass in mu.items():
            ball = sphere_at(pg, v, i_t)
            if not ball:
                raise EmptySphere(f"S_{i_t}({pg.label(v)}) is empty for this pattern")
            unit = mass / len(ball)
            for w in ball:
                nxt[w] = nxt.get(w, Fraction(0)) + unit
        mu = nxt
    pairs: dict[int, Fraction] = {}
    for v, mass in mu.items():
        k = pg.dist[v]
        pairs[k] = pairs.get(k, Fraction(0)) + mass
    return ProbabilityVector.from_pairs(pairs.items())


def _window_for_pattern(cg: cy.CayleyGraph, pat) -> PointedGraph:
    pg = cy.realize_window(cg, sum(pat) if pat else 0)
    return pg


def brute_force_conditional(
    cg: cy.CayleyGraph, pattern, cap: int = ENUMERATION_CAP
) -> ProbabilityVector:
    """The conditional law by full enumeration of generator-sphere tuples."""
    if not isinstance(cg, cy.CayleyGraph):
        raise NotCayley("brute-force products need a Cayley graph")
    pat = tuple(int(i) for i in pattern)
    pg = _window_for_pattern(cg, pat)
    data = pg.cayley
    top = max(data.sphere_elements) if data.saturated else pg.exact_radius
    pat = validate_pattern(pat, top)
    spheres = []
    total = 1
    for i in pat:
        elems = data.sphere_elements.get(i, ())
        if not elems:
            raise EmptySphere(f"S_{i}(identity) is empty")
        spheres.append(elems)
        total *= len(elems)
        if total > cap:
            raise EnumerationCapExceeded(f"{total} tuples exceed the cap {cap}")
    counts: dict[int, int] = {}
    for tup in iter_product(*spheres):
        g = tup[0]
        for v in tup[1:]:
            g = cy.multiply(g, v)
        k = pg.dist[data.index[g]]
        counts[k] = counts.get(k, 0) + 1
    return ProbabilityVector.from_pairs(
        (k, Fraction(c, total)) for k, c in counts.items()
    )


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Monte-Carlo tally with the seed that reproduces it."""

    counts: dict
    trials: int
    seed: int
    pattern: tuple[int, ...]

    def estimate(self, k: int) -> float:
        return self.counts.get(k, 0) / self.trials

    def ci99(self, k: int) -> float:
        p = self.estimate(k)
        return Z99 * sqrt(p * (1.0 - p) / self.trials)

    def max_deviation(self, exact: ProbabilityVector) -> float:
        keys = set(self.counts) | set(exact.support)
        return max(abs(self.estimate(k) - float(exact.coefficient(k))) for k in keys)

    def to_jsonable(self) -> dict:
        est = {
            str(k): {
                "count": self.counts[k],
                "estimate": self.estimate(k),
                "ci99": self.ci99(k),
            }
            for k in sorted(self.counts)
        }
        return {
            "trials": self.trials,
            "seed": self.seed,
            "pattern": list(self.pattern),
            "outcomes": est,
        }


def _step_rng(seed: int, step: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, step])))


def monte_carlo_conditional(
    cg: cy.CayleyGraph, pattern, trials: int, seed: int = 0
) -> EmpiricalDistribution:
    """Sample each jump uniformly from its sphere and tally end distances.

    One counter-based stream per pattern step, keyed by (seed, step), so
    the tally is independent of batching or execution order.
    """
    if not isinstance(cg, cy.CayleyGraph):
        raise NotCayley("Monte-Carlo products need a Cayley graph")
    if trials < 1:
        raise BadParameter("trials must be >= 1")
    pat = tuple(int(i) for i in pattern)
    pg = _window_for_pattern(cg, pat)
    data = pg.cayley
    top = max(data.sphere_elements) if data.saturated else pg.exact_radius
    pat = validate_pattern(pat, top)
    for i in pat:
        if not data.sphere_elements.get(i, ()):
            raise EmptySphere(f"S_{i}(identity) is empty")
    if cg.kind.family == "vector":
        counts = _mc_vector(pg, pat, trials, seed)
    else:
        counts = _mc_generic(pg, pat, trials, seed)
    return EmpiricalDistribution(counts, trials, seed, pat)


def _mc_vector(pg: PointedGraph, pat, trials: int, seed: int) -> dict:
    data = pg.cayley
    kind = data.cg.kind
    mods = np.array(kind.mods, dtype=np.int64)
    torsion = mods > 0
    dims = len(kind.mods)
    acc = np.zeros((trials, dims), dtype=np.int64)
    for step, i in enumerate(pat):
        elems = np.array([g.data for g in data.sphere_elements[i]], dtype=np.int64)
        idx = _step_rng(seed, step).integers(0, len(elems), size=trials)
        acc += elems[idx]
        if torsion.any():
            acc[:, torsion] %= mods[torsion]
    span = sum(pat)
    offsets = np.where(torsion, 0, span)
    sizes = np.where(torsion, mods, 2 * span + 1)
    strides = np.ones(dims, dtype=np.int64)
    for d in range(dims - 2, -1, -1):
        strides[d] = strides[d + 1] * sizes[d + 1]
    window = np.array([g.data for g in data.elements], dtype=np.int64)
    window_codes = ((window + offsets) * strides).sum(axis=1)
    order = np.argsort(window_codes)
    sorted_codes = window_codes[order]
    dist = np.array(pg.dist, dtype=np.int64)[order]
    codes = ((acc + offsets) * strides).sum(axis=1)
    pos = np.searchsorted(sorted_codes, codes)
    assert (sorted_codes[pos] == codes).all()
    outcome = dist[pos]
    values, tallies = np.unique(outcome, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, tallies)}


def _mc_generic(pg: PointedGraph, pat, trials: int, seed: int) -> dict:
    data = pg.cayley
    draws = [
        _step_rng(seed, step).integers(0, len(data.sphere_elements[i]), size=trials)
        for step, i in enumerate(pat)
    ]
    counts: dict[int, int] = {}
    for t in range(trials):
        g = data.sphere_elements[pat[0]][draws[0][t]]
        for step in range(1, len(pat)):
            g = cy.multiply(g, data.sphere_elements[pat[step]][draws[step][t]])
        k = pg.dist[data.index[g]]
        counts[k] = counts.get(k, 0) + 1
    return counts


def uniform_distribution(pg: PointedGraph) -> dict[int, Fraction]:
    """The uniform per-element step law alpha_i = 1/|G| for every index."""
    order = pg.vertex_count
    return {i: Fraction(1, order) for i in sorted(pg.spheres)}


def validate_alpha(pg: PointedGraph, alpha) -> dict[int, Fraction]:
    """Check a per-element step distribution: alpha_i >= 0 with
    sum_i alpha_i |S_i| = 1 exactly."""
    cleaned = {}
    for i, w in dict(alpha).items():
        i = int(i)
        if i not in pg.spheres:
            raise IndexOutOfRange(f"alpha index {i} outside the index set")
        w = Fraction(w)
        if w < 0:
            raise BadParameter(f"alpha_{i} is negative")
        if w:
            cleaned[i] = w
    total = sum(
        (w * len(pg.spheres[i]) for i, w in cleaned.items()), Fraction(0)
    )
    if total != 1:
        raise BadParameter(f"sum alpha_i |S_i| = {total}, expected 1")
    return cleaned


@dataclass(frozen=True)
class JointLaw:
    """Exact joint law of (Z_1,...,Z_depth) for a finite Cayley walk."""

    name: str
    depth: int
    law: dict
    alpha: dict
    sizes: tuple[int, ...]
    order: int

    def prefix_law(self, t: int) -> dict:
        out: dict[tuple[int, ...], Fraction] = {}
        for pattern, p in self.law.items():
            key = pattern[:t]
            out[key] = out.get(key, Fraction(0)) + p
        return out

    def marginal(self, t: int) -> dict:
        """Law of Z_t alone."""
        out: dict[int, Fraction] = {}
        for pattern, p in self.law.items():
            k = pattern[t - 1]
            out[k] = out.get(k, Fraction(0)) + p
        return out

    def conditional_rows(self, t: int) -> dict:
        """P(Z_t = j | Z_1..Z_{t-1}) for every positive-probability prefix."""
        prefixes = self.prefix_law(t - 1)
        longer = self.prefix_law(t)
        rows: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for key, p in longer.items():
            head, j = key[:-1], key[-1]
            rows.setdefault(head, {})[j] = p / prefixes[head]
        return rows

    def to_jsonable(self) -> dict:
        return {
            "graph": self.name,
            "depth": self.depth,
            "alpha": {str(i): w for i, w in sorted(self.alpha.items())},
            "law": {
                ",".join(str(i) for i in pattern): p
                for pattern, p in sorted(self.law.items())
            },
        }


def joint_distance_law(
    cg: cy.CayleyGraph, alpha, depth: int, pattern_cap: int = PATTERN_CAP
) -> JointLaw:
    """Exact DP over (distance history, current element) for a finite group."""
    if not isinstance(cg, cy.CayleyGraph):
        raise NotCayley("the distance process is defined over a Cayley graph")
    if not cg.finite:
        raise NotFinite(f"{cg.spec_name} is infinite; joint laws need a finite group")
    if depth < 1:
        raise BadParameter("depth must be >= 1")
    pg = cy.realize_full(cg)
    alpha = validate_alpha(pg, alpha if alpha is not None else uniform_distribution(pg))
    top = max(pg.spheres)
    if (top + 1) ** depth > pattern_cap:
        raise PatternCapExceeded(
            f"(M+1)^depth = {(top + 1) ** depth} exceeds the cap {pattern_cap}"
        )
    data = pg.cayley
    n = pg.vertex_count
    mult = [
        [data.index[cy.multiply(data.elements[v], data.elements[g])] for g in range(n)]
        for v in range(n)
    ]
    weights = [alpha.get(pg.dist[g], Fraction(0)) for g in range(n)]
    states: dict[tuple, dict[int, Fraction]] = {(): {pg.base: Fraction(1)}}
    for _ in range(depth):
        nxt: dict[tuple, dict[int, Fraction]] = {}
        for prefix, dist_map in states.items():
            for v, mass in dist_map.items():
                row = mult[v]
                for g in range(n):
                    w = weights[g]
                    if not w:
                        continue
                    target = row[g]
                    key = prefix + (pg.dist[target],)
                    bucket = nxt.setdefault(key, {})
                    bucket[target] = bucket.get(target, Fraction(0)) + mass * w
        states = nxt
    law = {
        prefix: sum(dist_map.values(), Fraction(0))
        for prefix, dist_map in states.items()
    }
    assert sum(law.values(), Fraction(0)) == 1
    return JointLaw(pg.name, depth, law, alpha, sphere_sizes(pg), pg.vertex_count)


@dataclass(frozen=True)
class MarkovReport:
    """Markov / i.i.d. verdicts for a joint distance law."""

    is_markov: bool
    is_iid: bool
    depth: int
    markov_witness: tuple | None
    iid_witness: tuple | None

    def to_jsonable(self) -> dict:
        def _wit(w):
            if w is None:
                return None
            t, pa, pb, ra, rb = w
            return {
                "position": t,
                "prefix_a": list(pa),
                "prefix_b": list(pb),
                "row_a": {str(k): v for k, v in sorted(ra.items())},
                "row_b": {str(k): v for k, v in sorted(rb.items())},
            }

        return {
            "is_markov": self.is_markov,
            "is_iid": self.is_iid,
            "depth": self.depth,
            "markov_witness": _wit(self.markov_witness),
            "iid_witness": _wit(self.iid_witness),
        }


def markov_check(law: JointLaw) -> MarkovReport:
    """Compare conditional next-step rows across histories.

    Markov: rows agree whenever the current distance Z_{t-1} agrees.
    i.i.d.: every row equals the single-step law.
    """
    step_law = law.marginal(1)
    is_markov, is_iid = True, True
    markov_witness = None
    iid_witness = None
    for t in range(2, law.depth + 1):
        rows = law.conditional_rows(t)
        by_last: dict[int, tuple] = {}
        for prefix in sorted(rows):
            row = rows[prefix]
            last = prefix[-1]
            if last in by_last:
                ref_prefix, ref_row = by_last[last]
                if ref_row != row and is_markov:
                    is_markov = False
                    markov_witness = (t, ref_prefix, prefix, ref_row, row)
            else:
                by_last[last] = (prefix, row)
            if row != step_law and is_iid:
                is_iid = False
                iid_witness = (t, prefix, prefix, row, step_law)
    return MarkovReport(is_markov, is_iid, law.depth, markov_witness, iid_witness)


@dataclass(frozen=True)
class StepIdentityReport:
    """Both sides of P(Z_2 = j | Z_1 = i) = sum_k p[i,k][j] alpha_k |S_k|."""

    i: int
    j: int
    lhs: Fraction
    rhs: Fraction
    uniform: bool
    sphere_identity: bool | None

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_jsonable(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equal": self.equal,
            "uniform": self.uniform,
            "sphere_identity": self.sphere_identity,
        }


def conditional_step_identity(cg: cy.CayleyGraph, alpha, i: int, j: int) -> StepIdentityReport:
    """Check the two-step conditional law against the structure constants."""
    if not isinstance(cg, cy.CayleyGraph):
        raise NotCayley("the step identity is defined over a Cayley graph")
    pg = cy.realize_full(cg)
    if alpha is None:
        alpha = uniform_distribution(pg)
    law = joint_distance_law(cg, alpha, 2)
    alpha = validate_alpha(pg, alpha)
    top = max(pg.spheres)
    if not 0 <= i <= top or not 0 <= j <= top:
        raise IndexOutOfRange(f"indices ({i},{j}) outside 0..{top}")
    first = law.marginal(1)
    if first.get(i, Fraction(0)) == 0:
        raise ZeroProbabilityCondition(f"P(Z_1 = {i}) = 0 under this alpha")
    joint_ij = sum(
        (p for pattern, p in law.law.items() if pattern == (i, j)), Fraction(0)
    )
    lhs = joint_ij / first[i]
    table = build_table(pg)
    sizes = sphere_sizes(pg)
    rhs = sum(
        (
            table.entry(i, k, j) * alpha.get(k, Fraction(0)) * sizes[k]
            for k in range(top + 1)
        ),
        Fraction(0),
    )
    uniform = all(
        alpha.get(k, Fraction(0)) == Fraction(1, pg.vertex_count)
        for k in range(top + 1)
    )
    sphere_identity = None
    if uniform:
        sphere_identity = sizes[j] == sum(
            (table.entry(i, k, j) * sizes[k] for k in range(top + 1)), Fraction(0)
        )
    return StepIdentityReport(i, j, lhs, rhs, uniform, sphere_identity)


@dataclass(frozen=True)
class PermutationReport:
    """Is PL invariant under reordering the pattern?"""

    passed: bool
    pattern: tuple[int, ...]
    patterns_checked: int
    hypothesis_met: bool
    witness: tuple | None

    def to_jsonable(self) -> dict:
        witness = None
        if self.witness is not None:
            pat_a, pat_b, k = self.witness
            witness = {"pattern_a": list(pat_a), "pattern_b": list(pat_b), "index": k}
        return {
            "passed": self.passed,
            "pattern": list(self.pattern),
            "patterns_checked": self.patterns_checked,
            "hypothesis_met": self.hypothesis_met,
            "witness": witness,
        }


def permutation_invariance_check(table: StructureTable, pattern) -> PermutationReport:
    """Compare PL over all distinct reorderings of the pattern.

    The invariance theorem assumes a Cayley graph with constant sphere
    intersections; the result is informational when that hypothesis
    fails, and hypothesis_met records it.
    """
    pat = validate_pattern(pattern, _table_top(table))
    if len(pat) > 8:
        raise BadParameter("permutation check capped at pattern length 8")
    hypothesis = False
    if table.pg is not None and table.pg.cayley is not None:
        hypothesis = check_S2(table.pg).passed
    variants = sorted(set(permutations(pat)))
    reference = left_nested_product(table, variants[0], extended=True)
    for other in variants[1:]:
        value = left_nested_product(table, other, extended=True)
        if value != reference:
            k = next(
                k
                for k in sorted(set(reference.support) | set(value.support))
                if reference.coefficient(k) != value.coefficient(k)
            )
            return PermutationReport(False, pat, len(variants), hypothesis, (variants[0], other, k))
    return PermutationReport(True, pat, len(variants), hypothesis, None)
