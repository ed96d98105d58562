"""The fixture catalog: named graphs built from short spec strings.

Grammar (params joined by ":"):
    cycle:<n>            n-cycle, n >= 3                (Cayley-backed)
    prism:<n>            circular ladder C_n x K_2      (Cayley-backed)
    bipartite:<n>,<m>    complete bipartite, base in the first part
    odd:<n>              odd graph O_n (O_3 = Petersen)
    lattice:<d>:r=<R>    Z^d window of radius R         (Cayley-backed)
    free:<n>:r=<R>       free-group window of radius R  (Cayley-backed)
    ladder:r=<R>         Z x Z/2 window of radius R     (Cayley-backed)
    tree:binary:<depth>  rooted binary tree truncated at the given depth
    figure:<n>[:base=<b>]  transcribed drawings, n in 3..6
    zmod:<m1>[,<m2>...][:r=<R>]  finite vector group    (Cayley-backed)
    perm:<file>[:r=<R>]  permutation group from a generator file

Infinite families require an explicit radius; finite Cayley fixtures
realize the whole group unless a radius is given.  The FORGE_FIXTURES
environment variable points at a directory whose figure<n>.json files
override the bundled transcriptions.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from itertools import combinations

from . import cayley as cy
from .errors import BadParameter, UnknownFixture, WindowOverflow
from .graphs import PointedGraph, build_graph, load_graph_file, parse_graph_json

TREE_CAP = 2_000_000


def catalog(spec: str) -> PointedGraph:
    """Build the named fixture; UnknownFixture for heads outside the grammar."""
    spec = spec.strip()
    if not spec:
        raise BadParameter("empty fixture spec")
    parts = spec.split(":")
    head, params = parts[0], parts[1:]
    builder = _BUILDERS.get(head)
    if builder is None:
        raise UnknownFixture(f"no fixture named {head!r}")
    return builder(spec, params)


def _split_params(params):
    positional, keyed = [], {}
    for p in params:
        if "=" in p:
            k, _, v = p.partition("=")
            if not k or not v:
                raise BadParameter(f"malformed parameter {p!r}")
            keyed[k] = v
        else:
            positional.append(p)
    return positional, keyed


def _int_param(spec, value, minimum, what):
    try:
        n = int(value)
    except (TypeError, ValueError) as exc:
        raise BadParameter(f"{spec!r}: {what} must be an integer") from exc
    if n < minimum:
        raise BadParameter(f"{spec!r}: {what} must be >= {minimum}")
    return n


def _radius(spec, keyed, required=True):
    if "r" not in keyed:
        if required:
            raise BadParameter(f"{spec!r}: window radius required, e.g. {spec}:r=6")
        return None
    return _int_param(spec, keyed["r"], 0, "radius r")


def _expect(spec, positional, count, what):
    if len(positional) != count:
        raise BadParameter(f"{spec!r}: expected {what}")
    return positional


def _realized(cg, spec, radius):
    if radius is None:
        pg = cy.realize_full(cg)
    else:
        pg = cy.realize_window(cg, radius)
    pg.name = spec
    return pg


def _build_cycle(spec, params):
    positional, keyed = _split_params(params)
    (n,) = _expect(spec, positional, 1, "one parameter: cycle:<n>")
    n = _int_param(spec, n, 3, "n")
    _expect(spec, list(keyed), 0, "no keyword parameters")
    return _realized(cy.parse_group_spec(f"zmod:{n}"), spec, None)


def _build_prism(spec, params):
    positional, keyed = _split_params(params)
    (n,) = _expect(spec, positional, 1, "one parameter: prism:<n>")
    n = _int_param(spec, n, 3, "n")
    _expect(spec, list(keyed), 0, "no keyword parameters")
    return _realized(cy.parse_group_spec(f"zmod:{n},2"), spec, None)


def _build_bipartite(spec, params):
    positional, keyed = _split_params(params)
    (arg,) = _expect(spec, positional, 1, "parameters bipartite:<n>,<m>")
    _expect(spec, list(keyed), 0, "no keyword parameters")
    pieces = arg.split(",")
    if len(pieces) != 2:
        raise BadParameter(f"{spec!r}: expected two part sizes n,m")
    n = _int_param(spec, pieces[0], 1, "n")
    m = _int_param(spec, pieces[1], 1, "m")
    edges = [(a, n + b) for a in range(n) for b in range(m)]
    return build_graph(edges, base=0, vertex_count=n + m, name=spec)


def _build_odd(spec, params):
    positional, keyed = _split_params(params)
    (n,) = _expect(spec, positional, 1, "one parameter: odd:<n>")
    n = _int_param(spec, n, 2, "n")
    _expect(spec, list(keyed), 0, "no keyword parameters")
    ground = range(2 * n - 1)
    subsets = list(combinations(ground, n - 1))
    if len(subsets) > TREE_CAP:
        raise WindowOverflow(f"{spec!r}: {len(subsets)} vertices exceeds the cap")
    index = {s: i for i, s in enumerate(subsets)}
    edges = []
    for i, s in enumerate(subsets):
        s_set = set(s)
        for t in subsets[i + 1 :]:
            if s_set.isdisjoint(t):
                edges.append((i, index[t]))
    labels = ["{" + ",".join(str(x) for x in s) + "}" for s in subsets]
    return build_graph(edges, base=0, vertex_count=len(subsets), labels=labels, name=spec)


def _build_lattice(spec, params):
    positional, keyed = _split_params(params)
    (d,) = _expect(spec, positional, 1, "lattice:<d>:r=<R>")
    d = _int_param(spec, d, 1, "dimension")
    radius = _radius(spec, keyed)
    return _realized(cy.parse_group_spec(f"lattice:{d}"), spec, radius)


def _build_free(spec, params):
    positional, keyed = _split_params(params)
    (n,) = _expect(spec, positional, 1, "free:<n>:r=<R>")
    n = _int_param(spec, n, 1, "rank")
    radius = _radius(spec, keyed)
    return _realized(cy.parse_group_spec(f"free:{n}"), spec, radius)


def _build_ladder(spec, params):
    positional, keyed = _split_params(params)
    _expect(spec, positional, 0, "ladder:r=<R>")
    radius = _radius(spec, keyed)
    return _realized(cy.parse_group_spec("ladder"), spec, radius)


def _build_zmod(spec, params):
    positional, keyed = _split_params(params)
    (mods,) = _expect(spec, positional, 1, "zmod:<m1>[,<m2>...][:r=<R>]")
    radius = _radius(spec, keyed, required=False)
    return _realized(cy.parse_group_spec(f"zmod:{mods}"), spec, radius)


def _build_perm(spec, params):
    positional, keyed = _split_params(params)
    if not positional:
        raise BadParameter(f"{spec!r}: perm:<file>[:r=<R>]")
    radius = _radius(spec, keyed, required=False)
    path = ":".join(positional)
    return _realized(cy.parse_group_spec(f"perm:{path}"), spec, radius)


def _build_tree(spec, params):
    positional, keyed = _split_params(params)
    shape_depth = _expect(spec, positional, 2, "tree:binary:<depth>")
    if shape_depth[0] != "binary":
        raise UnknownFixture(f"{spec!r}: only tree:binary is available")
    depth = _int_param(spec, shape_depth[1], 1, "depth")
    _expect(spec, list(keyed), 0, "no keyword parameters")
    count = 2 ** (depth + 1) - 1
    if count > TREE_CAP:
        raise WindowOverflow(f"{spec!r}: {count} vertices exceeds the cap")
    edges = []
    labels = ["e"]
    for v in range(1, count):
        parent = (v - 1) // 2
        edges.append((parent, v))
        labels.append(labels[parent].replace("e", "") + str((v - 1) % 2))
    return build_graph(
        edges,
        base=0,
        vertex_count=count,
        labels=labels,
        name=spec,
        truncated=True,
        exact_radius=depth // 3,
    )


def _figure_data(number: int) -> dict:
    filename = f"figure{number}.json"
    override = os.environ.get("FORGE_FIXTURES")
    if override:
        path = os.path.join(override, filename)
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                return json.load(fh)
    ref = resources.files("forge").joinpath("fixtures_data", filename)
    if not ref.is_file():
        raise UnknownFixture(f"no transcription for figure {number}")
    return json.loads(ref.read_text(encoding="utf-8"))


def _build_figure(spec, params):
    positional, keyed = _split_params(params)
    (num,) = _expect(spec, positional, 1, "figure:<n>[:base=<b>]")
    number = _int_param(spec, num, 0, "figure number")
    data = _figure_data(number)
    base_arg = keyed.pop("base", None)
    _expect(spec, list(keyed), 0, "only base=<b> is accepted")
    if base_arg is not None:
        data = dict(data)
        data["base"] = _resolve_base(data, base_arg, spec)
    pg = parse_graph_json(data, name=spec)
    pg.name = spec
    pg.meta["ambiguous"] = bool(data.get("ambiguous", False))
    if "note" in data:
        pg.meta["note"] = data["note"]
    if "bases" in data:
        pg.meta["bases"] = dict(data["bases"])
    return pg


def _resolve_base(data, base_arg, spec):
    named = data.get("bases", {})
    if base_arg in named:
        return int(named[base_arg])
    labels = data.get("labels", {})
    for vid, text in labels.items():
        if text == base_arg:
            return int(vid)
    try:
        vid = int(base_arg)
    except ValueError:
        raise BadParameter(
            f"{spec!r}: base {base_arg!r} is neither a named base, a label, nor a vertex id"
        ) from None
    if not 0 <= vid < int(data["vertices"]):
        raise BadParameter(f"{spec!r}: base vertex {vid} out of range")
    return vid


_BUILDERS = {
    "cycle": _build_cycle,
    "prism": _build_prism,
    "bipartite": _build_bipartite,
    "odd": _build_odd,
    "lattice": _build_lattice,
    "free": _build_free,
    "ladder": _build_ladder,
    "tree": _build_tree,
    "figure": _build_figure,
    "zmod": _build_zmod,
    "perm": _build_perm,
}


def resolve_spec(spec: str) -> PointedGraph:
    """Resolve a CLI target: a JSON graph file if it looks like a path,
    otherwise a catalog fixture."""
    if spec.endswith(".json") or "/" in spec or os.path.isfile(spec):
        return load_graph_file(spec)
    return catalog(spec)
