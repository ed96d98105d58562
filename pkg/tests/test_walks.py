"""m-fold product routes and the distance process.

The three routes (left-nested algebra product, jump-distribution DP,
literal enumeration) are compared on small Cayley graphs where all of
them are cheap, plus the known divergence cases: the left-nested product
differs from the jump law on the triangular prism, and pattern order
matters on the square lattice.
"""

from fractions import Fraction as F

import pytest

from forge.cayley import parse_group_spec
from forge.errors import (
    BadParameter,
    EnumerationCapExceeded,
    IndexOutOfRange,
    NotCayley,
    NotFinite,
    PatternCapExceeded,
    RadiusExceeded,
    ZeroProbabilityCondition,
)
from forge.fixtures import resolve_spec
from forge.hypergroup import build_table
from forge.walks import (
    brute_force_conditional,
    conditional_step_identity,
    joint_distance_law,
    jump_distribution,
    left_nested_product,
    markov_check,
    monte_carlo_conditional,
    permutation_invariance_check,
    uniform_distribution,
    validate_alpha,
    validate_pattern,
)


def test_validate_pattern():
    assert validate_pattern((1, 2, 0), 3) == (1, 2, 0)
    with pytest.raises(BadParameter):
        validate_pattern((), 3)
    with pytest.raises(IndexOutOfRange):
        validate_pattern((1, -1), 3)
    with pytest.raises(IndexOutOfRange):
        validate_pattern((4,), 3)


def test_prism_pl_differs_from_jump_law():
    prism = resolve_spec("prism:3")
    table = build_table(prism)
    pl = left_nested_product(table, (1, 2, 1))
    j = jump_distribution(prism, (1, 2, 1))
    assert pl.as_dict() == {0: F(2, 9), 1: F(10, 27), 2: F(11, 27)}
    assert j.as_dict() == {0: F(2, 9), 1: F(1, 3), 2: F(4, 9)}
    assert pl != j


def test_tree_pl_equals_jump_law():
    tree = resolve_spec("tree:binary:12")
    expected = {0: F(1, 9), 2: F(4, 9), 4: F(4, 9)}
    assert left_nested_product(build_table(tree), (1, 1, 2)).as_dict() == expected
    assert jump_distribution(tree, (1, 1, 2)).as_dict() == expected


def test_pl_matches_j_on_distance_regular_graphs():
    for spec in ("cycle:6", "prism:4", "odd:3", "bipartite:3,3"):
        pg = resolve_spec(spec)
        table = build_table(pg)
        top = max(pg.spheres)
        for pattern in [(1, 1), (1, 2), (2, 1), (1, 1, 1), (1, 2, 1)]:
            if max(pattern) > top:
                continue
            assert left_nested_product(table, pattern) == jump_distribution(
                pg, pattern
            ), (spec, pattern)


def test_left_nested_enforces_intermediate_bound():
    table = build_table(resolve_spec("lattice:1:r=12"), bound=3)
    with pytest.raises(RadiusExceeded):
        left_nested_product(table, (3, 3, 3))
    extended = left_nested_product(table, (3, 3, 3), extended=True)
    assert extended.as_dict() == {3: F(3, 4), 9: F(1, 4)}


def test_jump_distribution_window_scope():
    tree = resolve_spec("tree:binary:12")
    with pytest.raises(RadiusExceeded):
        jump_distribution(tree, (2, 2, 1))


def test_brute_force_matches_jump_law():
    cg = parse_group_spec("zmod:3,2")
    prism = resolve_spec("prism:3")
    for pattern in [(1, 1), (1, 2), (2, 1), (1, 2, 1), (2, 2, 2)]:
        assert brute_force_conditional(cg, pattern) == jump_distribution(
            prism, pattern
        ), pattern


def test_brute_force_needs_cayley_graph():
    with pytest.raises(NotCayley):
        brute_force_conditional(resolve_spec("prism:3"), (1, 1))


def test_brute_force_cap():
    with pytest.raises(EnumerationCapExceeded):
        brute_force_conditional(parse_group_spec("zmod:3,2"), (1, 1, 1), cap=10)


def test_monte_carlo_reproducible_and_seed_sensitive():
    cg = parse_group_spec("zmod:3,2")
    a = monte_carlo_conditional(cg, (1, 2, 1), 20_000, seed=0)
    b = monte_carlo_conditional(cg, (1, 2, 1), 20_000, seed=0)
    c = monte_carlo_conditional(cg, (1, 2, 1), 20_000, seed=1)
    assert a.counts == b.counts
    assert a.counts != c.counts
    assert sum(a.counts.values()) == 20_000


def test_monte_carlo_tracks_exact_law():
    cg = parse_group_spec("zmod:3,2")
    exact = jump_distribution(resolve_spec("prism:3"), (1, 2, 1))
    mc = monte_carlo_conditional(cg, (1, 2, 1), 50_000, seed=0)
    assert mc.max_deviation(exact) < 0.01
    for k in exact.support:
        assert mc.ci99(k) > 0


def test_monte_carlo_on_infinite_lattice():
    cg = parse_group_spec("lattice:1")
    exact = jump_distribution(resolve_spec("lattice:1:r=6"), (1, 2, 3))
    mc = monte_carlo_conditional(cg, (1, 2, 3), 50_000, seed=0)
    assert mc.max_deviation(exact) < 0.015


def test_uniform_distribution_and_alpha_validation():
    prism = resolve_spec("prism:3")
    alpha = uniform_distribution(prism)
    assert alpha == {0: F(1, 6), 1: F(1, 6), 2: F(1, 6)}
    assert validate_alpha(prism, alpha) == alpha
    with pytest.raises(BadParameter):
        validate_alpha(prism, {0: F(1, 2), 1: F(1, 12)})
    with pytest.raises(BadParameter):
        validate_alpha(prism, {0: F(3, 2), 1: F(-1, 6), 2: F(0)})
    with pytest.raises(IndexOutOfRange):
        validate_alpha(prism, {0: F(1, 2), 5: F(1, 2)})


def test_joint_law_uniform_alpha_factorizes():
    cg = parse_group_spec("zmod:4")
    law = joint_distance_law(cg, None, 3)
    sizes = (1, 2, 1)
    for pattern, p in law.law.items():
        expected = F(1)
        for i in pattern:
            expected *= F(sizes[i], 4)
        assert p == expected, pattern


def test_joint_law_requires_finite_group():
    with pytest.raises(NotFinite):
        joint_distance_law(parse_group_spec("lattice:1"), None, 2)


def test_joint_law_pattern_cap():
    with pytest.raises(PatternCapExceeded):
        joint_distance_law(parse_group_spec("zmod:4"), None, 4, pattern_cap=50)


def test_uniform_walk_is_iid():
    for spec in ("zmod:4", "zmod:3,2"):
        report = markov_check(joint_distance_law(parse_group_spec(spec), None, 3))
        assert report.is_markov and report.is_iid, spec


def test_skewed_cycle_walk_is_markov_not_iid():
    alpha = {0: F(1, 2), 1: F(1, 8), 2: F(1, 4)}
    report = markov_check(joint_distance_law(parse_group_spec("zmod:4"), alpha, 3))
    assert report.is_markov and not report.is_iid
    assert report.iid_witness is not None


def test_skewed_prism_walk_is_not_markov():
    alpha = {0: F(1, 4), 1: F(1, 6), 2: F(1, 8)}
    report = markov_check(joint_distance_law(parse_group_spec("zmod:3,2"), alpha, 3))
    assert not report.is_markov and not report.is_iid
    t, prefix_a, prefix_b, row_a, row_b = report.markov_witness
    assert t == 3
    assert prefix_a[-1] == prefix_b[-1]
    assert (prefix_a, prefix_b) == ((0, 1), (1, 1))
    assert row_a == {0: F(1, 6), 1: F(19, 36), 2: F(11, 36)}
    assert row_b == {0: F(1, 6), 1: F(241, 456), 2: F(139, 456)}


def test_conditional_step_identity_uniform():
    report = conditional_step_identity(parse_group_spec("zmod:3,2"), None, 1, 2)
    assert report.equal and report.uniform and report.sphere_identity
    assert report.lhs == F(1, 3)


def test_conditional_step_identity_skewed():
    alpha = {0: F(1, 4), 1: F(1, 6), 2: F(1, 8)}
    report = conditional_step_identity(parse_group_spec("zmod:3,2"), alpha, 1, 2)
    assert report.equal and not report.uniform
    assert report.sphere_identity is None


def test_conditional_step_identity_zero_condition():
    alpha = {0: F(1, 2), 1: F(0), 2: F(1, 2)}
    with pytest.raises(ZeroProbabilityCondition):
        conditional_step_identity(parse_group_spec("zmod:4"), alpha, 1, 1)


def test_permutation_invariance_on_cycle():
    report = permutation_invariance_check(build_table(resolve_spec("cycle:6")), (1, 2, 2))
    assert report.passed and report.hypothesis_met
    assert report.patterns_checked == 3


def test_permutation_invariance_fails_on_plane():
    table = build_table(resolve_spec("lattice:2:r=9"), bound=3)
    report = permutation_invariance_check(table, (1, 1, 2))
    assert not report.passed and not report.hypothesis_met
    pat_a, pat_b, k = report.witness
    assert sorted(pat_a) == sorted(pat_b) == [1, 1, 2]
