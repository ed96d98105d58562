"""Cayley graphs over a few concrete group families.

Supported kinds: integer vector groups Z^a x Z/m_1 x ... (family
"vector", one modulus per coordinate, 0 marking a free coordinate),
permutation groups given by generator files (family "perm"), and free
groups on the standard symmetric basis (family "free").

realize_window produces a PointedGraph for the ball of a chosen radius
around the identity.  Because Cayley graphs satisfy the translation
identity d(u, v) = |u^-1 v|, window spheres are served exactly out to the
full radius by translating base spheres; check_S3 cross-validates that
identity against raw BFS.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    BadParameter,
    CapExceeded,
    ContainsIdentity,
    KindMismatch,
    NotFinite,
    NotGenerating,
    NotSymmetric,
    WindowOverflow,
)
from .graphs import INFINITE, PointedGraph, build_graph

WINDOW_CAP = 200_000
CLOSURE_CAP = 100_000


@dataclass(frozen=True)
class GroupKind:
    """Identity of a group: family plus its shape parameters."""

    family: str
    mods: tuple[int, ...] = ()
    degree: int = 0
    rank: int = 0

    def describe(self) -> str:
        if self.family == "vector":
            parts = ["Z" if m == 0 else f"Z/{m}" for m in self.mods]
            return " x ".join(parts)
        if self.family == "perm":
            return f"perm(degree={self.degree})"
        return f"free(rank={self.rank})"


@dataclass(frozen=True)
class GroupElement:
    kind: GroupKind
    data: tuple

    def sort_key(self):
        if self.kind.family == "free":
            return (len(self.data), self.data)
        return self.data


def identity(kind: GroupKind) -> GroupElement:
    if kind.family == "vector":
        return GroupElement(kind, (0,) * len(kind.mods))
    if kind.family == "perm":
        return GroupElement(kind, tuple(range(kind.degree)))
    return GroupElement(kind, ())


def _norm_vector(kind: GroupKind, coords) -> tuple[int, ...]:
    return tuple(
        c % m if m else c for c, m in zip(coords, kind.mods)
    )


def _reduce_word(word) -> tuple[int, ...]:
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.kind != h.kind:
        raise KindMismatch(f"cannot multiply {g.kind.describe()} by {h.kind.describe()}")
    kind = g.kind
    if kind.family == "vector":
        return GroupElement(kind, _norm_vector(kind, (a + b for a, b in zip(g.data, h.data))))
    if kind.family == "perm":
        return GroupElement(kind, tuple(g.data[h.data[x]] for x in range(kind.degree)))
    return GroupElement(kind, _reduce_word(g.data + h.data))


def inverse(g: GroupElement) -> GroupElement:
    kind = g.kind
    if kind.family == "vector":
        return GroupElement(kind, _norm_vector(kind, (-c for c in g.data)))
    if kind.family == "perm":
        inv = [0] * kind.degree
        for x, y in enumerate(g.data):
            inv[y] = x
        return GroupElement(kind, tuple(inv))
    return GroupElement(kind, tuple(-x for x in reversed(g.data)))


def element_str(g: GroupElement) -> str:
    kind = g.kind
    if kind.family == "vector":
        return ",".join(str(c) for c in g.data)
    if kind.family == "perm":
        return _cycle_str(g.data)
    if not g.data:
        return "e"
    parts = []
    for x in g.data:
        i = abs(x)
        if kind.rank <= 26:
            letter = chr(ord("a") + i - 1)
            parts.append(letter.upper() if x < 0 else letter)
        else:
            parts.append(f"G{i}" if x < 0 else f"g{i}")
    return "".join(parts) if kind.rank <= 26 else ".".join(parts)


def _cycle_str(mapping: tuple[int, ...]) -> str:
    seen = [False] * len(mapping)
    cycles = []
    for start in range(len(mapping)):
        if seen[start] or mapping[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = mapping[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = mapping[x]
        cycles.append("(" + " ".join(str(v) for v in cyc) + ")")
    return "".join(cycles) if cycles else "e"


@dataclass(eq=False)
class CayleyGraph:
    """A group kind with a validated symmetric generating set."""

    kind: GroupKind
    generators: tuple[GroupElement, ...]
    spec_name: str
    finite: bool
    order: int | None
    _full: list = field(default=None, repr=False)


def parse_group_spec(spec: str) -> CayleyGraph:
    """Build a Cayley graph from a spec string with default generators.

    Forms: zmod:m[,m2,...] (finite vector groups), lattice:d (Z^d),
    free:n, ladder (Z x Z/2), perm:<file> (cycle-notation generators).
    """
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    if head == "zmod":
        try:
            mods = tuple(int(x) for x in rest.split(","))
        except ValueError as exc:
            raise BadParameter(f"bad zmod spec {spec!r}") from exc
        if not mods or any(m < 2 for m in mods):
            raise BadParameter(f"zmod moduli must all be >= 2: {spec!r}")
        kind = GroupKind("vector", mods=mods)
    elif head == "lattice":
        try:
            d = int(rest)
        except ValueError as exc:
            raise BadParameter(f"bad lattice spec {spec!r}") from exc
        if d < 1:
            raise BadParameter(f"lattice dimension must be >= 1: {spec!r}")
        kind = GroupKind("vector", mods=(0,) * d)
    elif head == "ladder" and not rest:
        kind = GroupKind("vector", mods=(0, 2))
    elif head == "free":
        try:
            n = int(rest)
        except ValueError as exc:
            raise BadParameter(f"bad free spec {spec!r}") from exc
        if n < 1:
            raise BadParameter(f"free rank must be >= 1: {spec!r}")
        kind = GroupKind("free", rank=n)
    elif head == "perm":
        if not rest:
            raise BadParameter("perm spec needs a generator file: perm:<path>")
        gens, degree = parse_perm_file(rest)
        kind = GroupKind("perm", degree=degree)
        elements = tuple(GroupElement(kind, g) for g in gens)
        return build_cayley(kind, elements, spec_name=spec)
    else:
        raise BadParameter(f"unknown group spec {spec!r}")
    return build_cayley(kind, default_generators(kind), spec_name=spec)


def default_generators(kind: GroupKind) -> tuple[GroupElement, ...]:
    """The standard symmetric generating set: +-e_i per coordinate or
    a_i^{+-1} per free rank."""
    gens = []
    if kind.family == "vector":
        n = len(kind.mods)
        for i in range(n):
            e = [0] * n
            e[i] = 1
            gens.append(GroupElement(kind, _norm_vector(kind, e)))
            e[i] = -1
            gens.append(GroupElement(kind, _norm_vector(kind, e)))
    elif kind.family == "free":
        for i in range(1, kind.rank + 1):
            gens.append(GroupElement(kind, (i,)))
            gens.append(GroupElement(kind, (-i,)))
    else:
        raise BadParameter("permutation groups take their generators from a file")
    seen = []
    for g in gens:
        if g not in seen:
            seen.append(g)
    return tuple(seen)


def parse_perm_file(path: str) -> tuple[list[tuple[int, ...]], int]:
    """Read one permutation per line in cycle notation, e.g. (0 1 2)(3 4)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise BadParameter(f"cannot read permutation file {path}: {exc}") from exc
    cycle_lists = []
    max_point = -1
    for ln, raw in enumerate(lines, 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        if not re.fullmatch(r"(\(\s*\d+(\s+\d+)*\s*\))+", text):
            raise BadParameter(f"{path}:{ln}: not cycle notation: {text!r}")
        cycles = [
            [int(tok) for tok in body.split()]
            for body in re.findall(r"\(([^()]*)\)", text)
        ]
        for cyc in cycles:
            if len(set(cyc)) != len(cyc):
                raise BadParameter(f"{path}:{ln}: repeated point inside a cycle")
            max_point = max(max_point, *cyc)
        cycle_lists.append(cycles)
    if not cycle_lists:
        raise BadParameter(f"{path}: no generators found")
    degree = max_point + 1
    perms = []
    for cycles in cycle_lists:
        mapping = list(range(degree))
        moved = set()
        for cyc in cycles:
            if moved & set(cyc):
                raise BadParameter(f"{path}: cycles within one line must be disjoint")
            moved |= set(cyc)
            for i, x in enumerate(cyc):
                mapping[x] = cyc[(i + 1) % len(cyc)]
        perms.append(tuple(mapping))
    return perms, degree


def _spans_full_lattice(rows, n: int) -> bool:
    """True iff the integer row span equals Z^n (all HNF pivots are 1)."""
    mat = [list(r) for r in rows if any(r)]
    pivots = 0
    for col in range(n):
        while True:
            nz = [r for r in range(pivots, len(mat)) if mat[r][col] != 0]
            if not nz:
                return False
            r_min = min(nz, key=lambda r: abs(mat[r][col]))
            mat[pivots], mat[r_min] = mat[r_min], mat[pivots]
            clean = True
            for r in range(pivots + 1, len(mat)):
                if mat[r][col] != 0:
                    q = mat[r][col] // mat[pivots][col]
                    mat[r] = [a - q * b for a, b in zip(mat[r], mat[pivots])]
                    if mat[r][col] != 0:
                        clean = False
            if clean:
                break
        if abs(mat[pivots][col]) != 1:
            return False
        pivots += 1
    return True


def build_cayley(
    kind: GroupKind, generators, spec_name: str | None = None
) -> CayleyGraph:
    """Validate a generating set: symmetric, identity-free, generating."""
    gens = tuple(generators)
    if not gens:
        raise BadParameter("empty generator set")
    for g in gens:
        if not isinstance(g, GroupElement) or g.kind != kind:
            raise KindMismatch("generator kind does not match the group kind")
    ident = identity(kind)
    if ident in gens:
        raise ContainsIdentity("generator set contains the identity")
    if len(set(gens)) != len(gens):
        raise BadParameter("generator set has repeated elements")
    gen_set = set(gens)
    for g in gens:
        if inverse(g) not in gen_set:
            raise NotSymmetric(f"generator {element_str(g)} has no inverse in the set")
    if kind.family == "vector":
        n = len(kind.mods)
        rows = [list(g.data) for g in gens]
        for i, m in enumerate(kind.mods):
            if m:
                rel = [0] * n
                rel[i] = m
                rows.append(rel)
        if not _spans_full_lattice(rows, n):
            raise NotGenerating("generators do not span the group")
        finite = all(m > 0 for m in kind.mods)
        order = 1 if finite else None
        if finite:
            for m in kind.mods:
                order *= m
    elif kind.family == "free":
        basis = set()
        for g in gens:
            if len(g.data) != 1:
                raise BadParameter(
                    "free-group generator sets other than the standard basis are not supported"
                )
            basis.add(abs(g.data[0]))
        if basis != set(range(1, kind.rank + 1)):
            raise NotGenerating("free-group generators must cover every basis letter")
        finite, order = False, None
    elif kind.family == "perm":
        finite, order = True, None
    else:
        raise BadParameter(f"unknown group family {kind.family!r}")
    gens = tuple(sorted(gens, key=GroupElement.sort_key))
    name = spec_name if spec_name is not None else kind.describe()
    cg = CayleyGraph(kind, gens, name, finite, order)
    if kind.family == "perm":
        cg.order = len(full_group(cg))
    return cg


def full_group(cg: CayleyGraph, cap: int = CLOSURE_CAP) -> list[GroupElement]:
    """Enumerate a finite group by closure under the generators."""
    if not cg.finite:
        raise NotFinite(f"{cg.spec_name} is infinite")
    if cg._full is not None:
        return cg._full
    ident = identity(cg.kind)
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in cg.generators:
            h = multiply(g, s)
            if h not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"group closure exceeds cap {cap}")
                seen.add(h)
                queue.append(h)
    cg._full = sorted(seen, key=GroupElement.sort_key)
    if cg.order is not None and len(cg._full) != cg.order:
        raise NotGenerating(
            f"closure has {len(cg._full)} of {cg.order} elements"
        )
    cg.order = len(cg._full)
    return cg._full


@dataclass(eq=False)
class WindowData:
    """Cayley bookkeeping attached to a realized window."""

    cg: CayleyGraph
    elements: tuple[GroupElement, ...]
    index: dict
    sphere_elements: dict
    saturated: bool
    radius: int


def realize_window(cg: CayleyGraph, radius: int, cap: int = WINDOW_CAP) -> PointedGraph:
    """The ball of the given radius around the identity as a pointed graph.

    If BFS exhausts the group before the radius, the window is the whole
    Cayley graph and is exact everywhere; otherwise it is truncated with
    exact_radius = radius, which sphere translation fully certifies.
    """
    if radius < 0:
        raise BadParameter("radius must be >= 0")
    ident = identity(cg.kind)
    layers = [[ident]]
    index = {ident: 0}
    elements = [ident]
    saturated = False
    for _ in range(radius):
        frontier = set()
        for g in layers[-1]:
            for s in cg.generators:
                h = multiply(g, s)
                if h not in index:
                    frontier.add(h)
        if not frontier:
            saturated = True
            break
        if len(elements) + len(frontier) > cap:
            raise WindowOverflow(
                f"window would exceed {cap} vertices at radius {len(layers)}"
            )
        layer = sorted(frontier, key=GroupElement.sort_key)
        for h in layer:
            index[h] = len(elements)
            elements.append(h)
        layers.append(layer)
    if not saturated:
        saturated = not any(
            multiply(g, s) not in index for g in layers[-1] for s in cg.generators
        )
    edges = []
    for g in elements:
        u = index[g]
        for s in cg.generators:
            h = multiply(g, s)
            v = index.get(h)
            if v is not None and u < v:
                edges.append((u, v))
    labels = [element_str(g) for g in elements]
    truncated = not saturated
    pg = build_graph(
        edges,
        base=0,
        vertex_count=len(elements),
        labels=labels,
        name=f"window({cg.spec_name},r={radius})",
        truncated=truncated,
        exact_radius=radius if truncated else INFINITE,
    )
    sphere_elements = {n: tuple(layer) for n, layer in enumerate(layers)}
    data = WindowData(cg, tuple(elements), index, sphere_elements, saturated, radius)
    pg.cayley = data

    def translated_sphere(v: int, n: int) -> tuple[int, ...]:
        base_sphere = data.sphere_elements.get(n)
        if base_sphere is None:
            return ()
        g = data.elements[v]
        return tuple(sorted(data.index[multiply(g, u)] for u in base_sphere))

    pg._sphere_oracle = translated_sphere
    return pg


def realize_full(cg: CayleyGraph, cap: int = WINDOW_CAP) -> PointedGraph:
    """Realize the complete Cayley graph of a finite group."""
    if not cg.finite:
        raise NotFinite(f"{cg.spec_name} is infinite; give a window radius instead")
    pg = realize_window(cg, cap, cap)
    if not pg.cayley.saturated:
        raise WindowOverflow(f"{cg.spec_name} exceeds {cap} vertices")
    pg.name = cg.spec_name
    return pg


@dataclass(frozen=True)
class S3Report:
    """Outcome of checking d(v, vw) = |w| on a window."""

    passed: bool
    checked: int
    witness: tuple | None
    scope: str

    def to_jsonable(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "witness": list(self.witness) if self.witness else None,
            "scope": self.scope,
        }


def check_S3(cg: CayleyGraph, radius: int, sample_cap: int = 200_000) -> S3Report:
    """Cross-validate the translation identity against raw window BFS.

    Covers every pair (v, w) with |v| + |w| <= radius, where geodesics
    cannot leave the window; beyond sample_cap pairs a deterministic
    stride sample is used and the scope says so.
    """
    from .graphs import bfs_distances

    pg = realize_window(cg, radius)
    data = pg.cayley
    pairs = []
    for v in range(pg.vertex_count):
        budget = radius - pg.dist[v]
        for n in range(1, budget + 1):
            for w in data.sphere_elements.get(n, ()):
                pairs.append((v, n, w))
    stride = max(1, -(-len(pairs) // sample_cap))
    scope = f"pairs with |v|+|w| <= {radius}"
    if stride > 1:
        scope += f", stride-{stride} sample"
    checked = 0
    for v, n, w in pairs[::stride]:
        target = data.index[multiply(data.elements[v], w)]
        actual = bfs_distances(pg, v)[target]
        checked += 1
        if actual != n:
            witness = (pg.label(v), element_str(w), n, actual)
            return S3Report(False, checked, witness, scope)
    return S3Report(True, checked, None, scope)
