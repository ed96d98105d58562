"""Group specs, generator validation, window realization, and (S3)."""

import pytest

from forge.cayley import (
    GroupElement,
    build_cayley,
    check_S3,
    element_str,
    identity,
    inverse,
    multiply,
    parse_group_spec,
    parse_perm_file,
    realize_full,
    realize_window,
)
from forge.errors import (
    BadParameter,
    ContainsIdentity,
    NotFinite,
    NotGenerating,
    NotSymmetric,
    WindowOverflow,
)


def test_parse_group_spec_families():
    assert parse_group_spec("zmod:5").finite
    assert parse_group_spec("zmod:3,2").order == 6
    assert not parse_group_spec("lattice:2").finite
    assert not parse_group_spec("ladder").finite
    assert not parse_group_spec("free:2").finite


@pytest.mark.parametrize(
    "spec", ["zmod:", "zmod:1", "lattice:0", "free:0", "perm:", "dihedral:4"]
)
def test_bad_group_specs(spec):
    with pytest.raises(BadParameter):
        parse_group_spec(spec)


def test_generator_validation():
    z = parse_group_spec("lattice:1")
    kind = z.kind
    two = GroupElement(kind, (2,))
    with pytest.raises(NotGenerating):
        build_cayley(kind, (two, inverse(two)))
    one = GroupElement(kind, (1,))
    with pytest.raises(NotSymmetric):
        build_cayley(kind, (one,))
    with pytest.raises(ContainsIdentity):
        build_cayley(kind, (one, inverse(one), identity(kind)))


def test_word_reduction_in_free_group():
    f = parse_group_spec("free:2")
    a = f.generators[0]
    assert multiply(a, inverse(a)) == identity(f.kind)
    assert len(multiply(a, a).data) == 2


def test_element_str_inverse_pairing():
    z = parse_group_spec("lattice:1")
    for g in z.generators:
        assert element_str(inverse(inverse(g))) == element_str(g)


def test_realize_full_finite():
    pg = realize_full(parse_group_spec("zmod:5"))
    assert pg.vertex_count == 5
    assert tuple(len(pg.spheres[n]) for n in sorted(pg.spheres)) == (1, 2, 2)
    assert not pg.truncated


def test_realize_full_rejects_infinite():
    with pytest.raises(NotFinite):
        realize_full(parse_group_spec("lattice:1"))


def test_window_saturation_detection():
    c8 = parse_group_spec("zmod:8")
    whole = realize_window(c8, 4)
    assert not whole.truncated and whole.cayley.saturated
    assert whole.vertex_count == 8
    partial = realize_window(c8, 3)
    assert partial.truncated and not partial.cayley.saturated
    assert partial.vertex_count == 7 and partial.exact_radius == 3


def test_window_cap():
    with pytest.raises(WindowOverflow):
        realize_window(parse_group_spec("free:2"), 6, cap=100)


def test_window_sphere_sizes_on_lattice():
    pg = realize_window(parse_group_spec("lattice:2"), 4)
    assert tuple(len(pg.spheres[n]) for n in range(5)) == (1, 4, 8, 12, 16)


def test_perm_file_roundtrip(tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("(0 1)\n(1 2)\n(2 3)\n")
    gens, degree = parse_perm_file(str(path))
    assert degree == 4 and len(gens) == 3
    cg = parse_group_spec(f"perm:{path}")
    assert cg.finite and cg.order == 24
    pg = realize_full(cg)
    assert tuple(len(pg.spheres[n]) for n in sorted(pg.spheres)) == (1, 3, 5, 6, 5, 3, 1)


def test_perm_file_requires_symmetric_closure(tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("(0 1 2 3 4)\n(0 1)\n")
    with pytest.raises(NotSymmetric):
        parse_group_spec(f"perm:{path}")


def test_perm_file_rejects_garbage(tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("(0 0 1)\n")
    with pytest.raises(BadParameter):
        parse_group_spec(f"perm:{path}")


def test_check_S3_on_abelian_groups():
    for spec in ("zmod:6", "lattice:1", "ladder"):
        report = check_S3(parse_group_spec(spec), 3)
        assert report.passed, spec
        assert report.checked > 0
        assert report.witness is None


def test_check_S3_scope_string_mentions_radius():
    report = check_S3(parse_group_spec("zmod:6"), 3)
    assert "3" in report.scope


def test_translated_sphere_oracle_extends_window():
    # sphere queries centered away from the identity are served by
    # translation, so |v| + n <= radius stays answerable at the rim
    from forge.graphs import sphere_at

    pg = realize_window(parse_group_spec("lattice:1"), 6)
    rim = pg.spheres[4][0]
    assert len(sphere_at(pg, rim, 2)) == 2
