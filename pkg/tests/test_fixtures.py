"""Named fixture specs: shapes, window scopes, and parameter validation."""

import pytest

from forge.errors import BadParameter, UnknownFixture
from forge.fixtures import resolve_spec


CATALOG_SHAPES = {
    "cycle:4": (4, (1, 2, 1)),
    "cycle:6": (6, (1, 2, 2, 1)),
    "prism:3": (6, (1, 3, 2)),
    "prism:4": (8, (1, 3, 3, 1)),
    "bipartite:2,3": (5, (1, 3, 1)),
    "bipartite:3,3": (6, (1, 3, 2)),
    "odd:3": (10, (1, 3, 6)),
    "figure:3": (7, (1, 4, 2)),
    "figure:4": (4, (1, 3)),
    "figure:5": (9, (1, 4, 4)),
    "figure:6": (8, (1, 5, 2)),
}


@pytest.mark.parametrize("spec", sorted(CATALOG_SHAPES))
def test_finite_fixture_shapes(spec):
    count, sizes = CATALOG_SHAPES[spec]
    pg = resolve_spec(spec)
    assert pg.vertex_count == count
    assert tuple(len(pg.spheres[n]) for n in sorted(pg.spheres)) == sizes
    assert not pg.truncated


def test_window_fixtures_have_scope():
    pg = resolve_spec("lattice:1:r=6")
    assert pg.truncated and pg.exact_radius == 6
    assert tuple(len(pg.spheres[n]) for n in sorted(pg.spheres)) == (1,) + (2,) * 6

    pg = resolve_spec("lattice:2:r=4")
    assert pg.vertex_count == 41
    assert tuple(len(pg.spheres[n]) for n in sorted(pg.spheres)) == (1, 4, 8, 12, 16)

    pg = resolve_spec("free:2:r=3")
    assert pg.vertex_count == 53
    assert tuple(len(pg.spheres[n]) for n in sorted(pg.spheres)) == (1, 4, 12, 36)

    pg = resolve_spec("ladder:r=5")
    assert tuple(len(pg.spheres[n]) for n in sorted(pg.spheres)) == (1, 3, 4, 4, 4, 4)


def test_tree_depth_sets_conservative_scope():
    # depth-D complete binary tree is only sphere-exact out to D//3 because
    # leaf-adjacent vertices see boundary effects beyond that
    pg = resolve_spec("tree:binary:12")
    assert pg.vertex_count == 2**13 - 1
    assert pg.truncated and pg.exact_radius == 4
    assert tuple(len(pg.spheres[n]) for n in range(5)) == (1, 2, 4, 8, 16)


def test_figure_base_override():
    pg = resolve_spec("figure:3:base=w0p")
    assert pg.base != resolve_spec("figure:3").base
    assert pg.label(pg.base) == "F'"


def test_cayley_backed_fixture_carries_window():
    pg = resolve_spec("lattice:1:r=6")
    assert pg.cayley is not None
    assert pg.cayley.radius == 6


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        resolve_spec("mobius:5")


@pytest.mark.parametrize(
    "spec",
    [
        "cycle:2",
        "prism:2",
        "bipartite:0,3",
        "lattice:0:r=4",
        "lattice:1",
        "ladder:5",
        "tree:binary:0",
        "figure:1",
        "figure:3:base=nope",
    ],
)
def test_bad_parameters_rejected(spec):
    with pytest.raises((BadParameter, UnknownFixture)):
        resolve_spec(spec)
