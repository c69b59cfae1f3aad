"""Finite groups acting on the right of finite sets.

Covers subgroup classes, orbit decompositions, the table of marks, the
Burnside semiring, equivariant spans and a finite check that product
preserving functors on finite G-sets are presheaves on the orbit category.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations, product as _cartesian
from typing import Optional, Sequence

from . import finset as fs
from . import spancat as sc
from .errors import BudgetExceeded, CompositionMismatch, LawvereError, StructureError
from .finset import FinMap, FinSet
from .semimat import Semiring


# ---------------------------------------------------------------------------
# Groups

@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: tuple
    identity: int = 0
    name: str = field(default="G", compare=False)

    def __post_init__(self):
        t = tuple(tuple(r) for r in self.table)
        object.__setattr__(self, "table", t)
        n = self.order
        if len(t) != n or any(len(r) != n for r in t):
            raise StructureError("Cayley table must be order x order")
        e = self.identity
        for a in range(n):
            if t[e][a] != a or t[a][e] != a:
                raise StructureError("identity law fails", (a,))
            if e not in t[a]:
                raise StructureError("element has no inverse", (a,))
            for b in range(n):
                for c in range(n):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        raise StructureError("associativity fails", (a, b, c))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def __iter__(self):
        return iter(range(self.order))

    def to_json(self) -> str:
        return json.dumps({"order": self.order, "table": [v for r in self.table for v in r],
                           "identity": self.identity, "name": self.name})

    @classmethod
    def from_json(cls, text: str) -> "FiniteGroup":
        d = json.loads(text)
        n = d["order"]
        flat = d["table"]
        if flat and isinstance(flat[0], list):
            flat = [v for r in flat for v in r]
        if len(flat) != n * n:
            raise StructureError("Cayley table has the wrong number of entries")
        return cls(n, [flat[i * n:(i + 1) * n] for i in range(n)], d.get("identity", 0),
                   d.get("name", f"G{n}"))


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(n, [[(a + b) % n for b in range(n)] for a in range(n)], 0, f"C{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup(1, [[0]], 0, "1")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.order
    table = [[g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(g.order * m)]
             for a in range(g.order * m)]
    return FiniteGroup(g.order * m, table, g.identity * m + h.identity, f"{g.name}x{h.name}")


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of ``0..n-1`` in lexicographic order; ``a*b`` applies ``a`` first."""
    perms = list(permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(b[a[i]] for i in range(n))] for b in perms] for a in perms]
    return FiniteGroup(len(perms), table, 0, f"S{n}")


BUILTIN_GROUPS = {
    "1": trivial_group,
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "C2xC2": lambda: direct_product(cyclic_group(2), cyclic_group(2)),
    "S3": lambda: symmetric_group(3),
}


def group_by_name(name: str) -> FiniteGroup:
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise LawvereError(f"unknown built-in group {name!r}") from None


# ---------------------------------------------------------------------------
# Subgroups

def subgroup_closure(g: FiniteGroup, gens) -> frozenset:
    out = {g.identity}
    frontier = list(out)
    gens = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for s in gens:
                b = g.mul(a, s)
                if b not in out:
                    out.add(b)
                    new.append(b)
        frontier = new
    return frozenset(out)


def all_subgroups(g: FiniteGroup, budget: int = 10_000) -> list[frozenset]:
    """Every subgroup, found by joining cyclic subgroups until nothing new appears."""
    subs = {subgroup_closure(g, [a]) for a in g}
    frontier = set(subs)
    while frontier:
        new = set()
        for h in frontier:
            for k in list(subs):
                j = subgroup_closure(g, h | k)
                if j not in subs:
                    new.add(j)
        subs |= new
        frontier = new
        if len(subs) > budget:
            raise BudgetExceeded("too many subgroups")
    return sorted(subs, key=lambda h: (len(h), sorted(h)))


def conjugate(g: FiniteGroup, h, x: int) -> frozenset:
    """``x^-1 H x``."""
    xi = g.inv(x)
    return frozenset(g.mul(g.mul(xi, a), x) for a in h)


@dataclass(frozen=True)
class SubgroupClass:
    index: int
    rep: tuple
    members: tuple

    @property
    def order(self) -> int:
        return len(self.rep)

    @property
    def name(self) -> str:
        return f"H{self.index}"

    def __contains__(self, h) -> bool:
        return frozenset(h) in self.members


def _canonical_subgroup(g: FiniteGroup, h, among=None) -> tuple:
    xs = g if among is None else among
    return min(tuple(sorted(conjugate(g, h, x))) for x in xs)


def subgroup_classes(g: FiniteGroup, budget: int = 24) -> list[SubgroupClass]:
    """Subgroups up to conjugacy, ordered by size then canonical representative."""
    if g.order > budget:
        raise BudgetExceeded(f"group order {g.order} exceeds {budget}")
    seen = {}
    for h in all_subgroups(g):
        rep = _canonical_subgroup(g, h)
        seen.setdefault(rep, set()).add(h)
    reps = sorted(seen, key=lambda r: (len(r), r))
    return [SubgroupClass(i, r, tuple(sorted(seen[r], key=sorted))) for i, r in enumerate(reps)]


def class_of(classes: Sequence[SubgroupClass], h) -> int:
    h = frozenset(h)
    for c in classes:
        if h in c.members:
            return c.index
    raise LawvereError("subgroup not found among the classes")


# ---------------------------------------------------------------------------
# G-sets

@dataclass(frozen=True)
class GSet:
    group: FiniteGroup
    size: int
    action: tuple

    def __post_init__(self):
        act = tuple(tuple(r) for r in self.action)
        object.__setattr__(self, "action", act)
        g = self.group
        if len(act) != self.size or any(len(r) != g.order for r in act):
            raise StructureError("action table must be size x order")
        for x in range(self.size):
            if act[x][g.identity] != x:
                raise StructureError("identity acts nontrivially", (x,))
            for a in g:
                for b in g:
                    if act[act[x][a]][b] != act[x][g.mul(a, b)]:
                        raise StructureError("action is not a right action", (x, a, b))

    @property
    def underlying(self) -> FinSet:
        return FinSet(self.size)

    def act(self, x: int, a: int) -> int:
        return self.action[x][a]

    def orbit(self, x: int) -> list[int]:
        return sorted(set(self.action[x]))

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for x in range(self.size):
            if x not in seen:
                o = self.orbit(x)
                seen.update(o)
                out.append(o)
        return out

    def stabilizer(self, x: int) -> frozenset:
        return frozenset(a for a in self.group if self.action[x][a] == x)

    def fixed_points(self, k) -> list[int]:
        return [x for x in range(self.size) if all(self.action[x][a] == x for a in k)]


def trivial_gset(g: FiniteGroup, n: int) -> GSet:
    return GSet(g, n, [[x] * g.order for x in range(n)])


def coset_space(g: FiniteGroup, h) -> GSet:
    """Right cosets ``H x`` ordered by least element, acted on by right multiplication."""
    h = frozenset(h)
    cosets = sorted({frozenset(g.mul(a, x) for a in h) for x in g}, key=min)
    where = {}
    for i, c in enumerate(cosets):
        for x in c:
            where[x] = i
    action = [[where[g.mul(min(c), a)] for a in g] for c in cosets]
    return GSet(g, len(cosets), action)


def regular_gset(g: FiniteGroup) -> GSet:
    return coset_space(g, {g.identity})


def disjoint_union(x: GSet, y: GSet) -> GSet:
    shift = x.size
    return GSet(x.group, x.size + y.size,
                list(x.action) + [[v + shift for v in r] for r in y.action])


def gset_product(x: GSet, y: GSet) -> GSet:
    """Cartesian product with the diagonal action; ``(a, b)`` sits at ``a*|y| + b``."""
    n = y.size
    return GSet(x.group, x.size * n,
                [[x.act(p // n, a) * n + y.act(p % n, a) for a in x.group] for p in range(x.size * n)])


def empty_gset(g: FiniteGroup) -> GSet:
    return GSet(g, 0, [])


@dataclass(frozen=True)
class GMap:
    source: GSet
    target: GSet
    map: FinMap

    def __post_init__(self):
        for x in range(self.source.size):
            for a in self.source.group:
                if self.map(self.source.act(x, a)) != self.target.act(self.map(x), a):
                    raise StructureError("map is not equivariant", (x, a))

    def __call__(self, x):
        return self.map(x)


def gmap(source: GSet, target: GSet, table) -> GMap:
    return GMap(source, target, FinMap(source.underlying, target.underlying, table))


def is_equivariant(source: GSet, target: GSet, table) -> bool:
    return all(table[source.act(x, a)] == target.act(table[x], a)
               for x in range(source.size) for a in source.group)


def gset_maps(x: GSet, y: GSet) -> list[GMap]:
    """All equivariant maps, by choosing a stabilizer-fixed image for each orbit representative."""
    orbits = x.orbits()
    choices = []
    for o in orbits:
        rep = o[0]
        choices.append(y.fixed_points(x.stabilizer(rep)))
    out = []
    g = x.group
    for images in _cartesian(*choices):
        table = [None] * x.size
        for o, img in zip(orbits, images):
            for a in g:
                table[x.act(o[0], a)] = y.act(img, a)
        out.append(gmap(x, y, table))
    return sorted(out, key=lambda f: f.map.table)


def are_isomorphic(x: GSet, y: GSet) -> bool:
    """Brute-force search for an equivariant bijection."""
    if x.size != y.size:
        return False
    return any(f.map.is_bijective() for f in gset_maps(x, y))


def enumerate_gsets(g: FiniteGroup, n: int, budget: int = 10**6) -> list[GSet]:
    """Every right action of ``g`` on ``0..n-1``, from homomorphisms into S_n."""
    if g.order == 1:
        return [trivial_gset(g, n)]
    perms = list(permutations(range(n)))
    if len(perms) ** 2 > budget:
        raise BudgetExceeded("too many candidate actions")
    gens = _generators(g)
    out = []
    for images in _cartesian(perms, repeat=len(gens)):
        act = _extend_action(g, gens, images, n)
        if act is not None:
            out.append(act)
    uniq = {a.action: a for a in out}
    return [uniq[k] for k in sorted(uniq)]


def _generators(g: FiniteGroup) -> list[int]:
    gens, span = [], frozenset({g.identity})
    for a in g:
        if a not in span:
            gens.append(a)
            span = subgroup_closure(g, gens)
    return gens


def _extend_action(g, gens, images, n):
    # build x.w for every group element w reached as a word in the generators
    act = {g.identity: tuple(range(n))}
    frontier = [g.identity]
    while frontier:
        new = []
        for w in frontier:
            for s, img in zip(gens, images):
                ws = g.mul(w, s)
                perm = tuple(img[act[w][x]] for x in range(n))
                if ws in act:
                    if act[ws] != perm:
                        return None
                else:
                    act[ws] = perm
                    new.append(ws)
        frontier = new
    try:
        return GSet(g, n, [[act[a][x] for a in g] for x in range(n)])
    except StructureError:
        return None


# ---------------------------------------------------------------------------
# Orbits and marks

@dataclass
class OrbitDecomposition:
    gset: GSet
    orbits: list
    points: list
    stabilizers: list
    classes: list
    counts: tuple

    def reconstruction(self) -> GMap:
        """Equivariant bijection from the G-set onto the disjoint union of ``G/Stab(p)``."""
        g = self.gset.group
        pieces = [coset_space(g, s) for s in self.stabilizers]
        target = empty_gset(g)
        offsets = []
        for piece in pieces:
            offsets.append(target.size)
            target = disjoint_union(target, piece)
        table = [None] * self.gset.size
        for o, p, s, off in zip(self.orbits, self.points, self.stabilizers, offsets):
            cosets = sorted({frozenset(g.mul(a, x) for a in s) for x in g}, key=min)
            where = {x: i for i, c in enumerate(cosets) for x in c}
            for a in g:
                table[self.gset.act(p, a)] = off + where[a]
        return gmap(self.gset, target, table)


def orbit_decompose(x: GSet, classes: Optional[list] = None) -> OrbitDecomposition:
    classes = classes if classes is not None else subgroup_classes(x.group)
    orbits = x.orbits()
    points = [o[0] for o in orbits]
    stabs = [x.stabilizer(p) for p in points]
    cls = [class_of(classes, s) for s in stabs]
    counts = [0] * len(classes)
    for c in cls:
        counts[c] += 1
    return OrbitDecomposition(x, orbits, points, stabs, cls, tuple(counts))


def table_of_marks(g: FiniteGroup) -> list[list[int]]:
    """``marks[i][j] = |(G/H_i)^{H_j}|`` over the subgroup classes in canonical order."""
    classes = subgroup_classes(g)
    spaces = [coset_space(g, c.rep) for c in classes]
    return [[len(space.fixed_points(k.rep)) for k in classes] for space in spaces]


def marks_json(g: FiniteGroup) -> dict:
    classes = subgroup_classes(g)
    return {"group": g.name,
            "classes": [{"name": c.name, "order": c.order, "elements": list(c.rep)} for c in classes],
            "marks": table_of_marks(g)}


def marks_of(g: FiniteGroup, x: GSet, classes=None) -> tuple:
    classes = classes if classes is not None else subgroup_classes(g)
    return tuple(len(x.fixed_points(k.rep)) for k in classes)


# ---------------------------------------------------------------------------
# Burnside semiring

class BurnsideData:
    """Structure constants of the Burnside semiring in the orbit basis."""

    def __init__(self, g: FiniteGroup):
        self.group = g
        self.classes = subgroup_classes(g)
        self.orbits = [coset_space(g, c.rep) for c in self.classes]
        r = len(self.classes)
        self.structure = [[orbit_decompose(gset_product(a, b), self.classes).counts
                           for b in self.orbits] for a in self.orbits]
        self.marks = table_of_marks(g)
        self.rank = r

    def add(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def mul(self, u, v):
        out = [0] * self.rank
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in enumerate(self.structure[i][j]):
                    out[k] += a * b * c
        return tuple(out)

    def zero(self):
        return (0,) * self.rank

    def one(self):
        return tuple(int(i == self.rank - 1) for i in range(self.rank))

    def basis(self, i: int) -> tuple:
        return tuple(int(k == i) for k in range(self.rank))

    def mark_vector(self, u) -> tuple:
        return tuple(sum(u[i] * self.marks[i][j] for i in range(self.rank)) for j in range(self.rank))

    def gset(self, u) -> GSet:
        x = empty_gset(self.group)
        for i, c in enumerate(u):
            for _ in range(c):
                x = disjoint_union(x, self.orbits[i])
        return x

    def vector(self, x: GSet) -> tuple:
        return orbit_decompose(x, self.classes).counts

    def to_json(self) -> dict:
        return {"group": self.group.name, "classes": [c.name for c in self.classes],
                "structure": [[list(v) for v in row] for row in self.structure]}


def burnside_semiring(g: FiniteGroup, bound: int = 1) -> Semiring:
    """N-combinations of orbits; sum is disjoint union, product is cartesian product.

    The carrier is infinite; ``sample`` holds every vector with coefficients
    up to ``bound``.
    """
    data = BurnsideData(g)
    sample = tuple(_cartesian(range(bound + 1), repeat=data.rank))
    r = Semiring(f"A({g.name})", data.add, data.mul, data.zero(), data.one(), None, sample)
    object.__setattr__(r, "data", data)
    return r


# ---------------------------------------------------------------------------
# Equivariant spans

@dataclass(frozen=True)
class GSpan:
    left: GMap
    right: GMap

    def __post_init__(self):
        if self.left.source != self.right.source:
            raise LawvereError("span legs must share their middle")

    @property
    def middle(self) -> GSet:
        return self.left.source

    @property
    def source(self) -> GSet:
        return self.left.target

    @property
    def target(self) -> GSet:
        return self.right.target

    def underlying(self) -> sc.Span:
        return sc.Span(self.left.map, self.right.map)


def gset_pullback(f: GMap, g: GMap) -> tuple[GSet, GMap, GMap]:
    if f.target != g.target:
        raise CompositionMismatch("equivariant pullback needs a common codomain")
    p, p1, p2 = fs.pullback(f.map, g.map)
    pairs = {(a, b): i for i, (a, b) in enumerate(zip(p1.table, p2.table))}
    grp = f.source.group
    action = [[pairs[(f.source.act(a, x), g.source.act(b, x))] for x in grp]
              for a, b in zip(p1.table, p2.table)]
    pg = GSet(grp, p.size, action)
    return pg, GMap(pg, f.source, p1), GMap(pg, g.source, p2)


def identity_gspan(x: GSet) -> GSpan:
    ident = gmap(x, x, range(x.size))
    return GSpan(ident, ident)


def compose_gspans(s: GSpan, t: GSpan) -> GSpan:
    if s.target != t.source:
        raise CompositionMismatch("span endpoints do not match")
    _, p1, p2 = gset_pullback(s.right, t.left)
    left = gmap(p1.source, s.source, fs.compose_maps(p1.map, s.left.map).table)
    right = gmap(p2.source, t.target, fs.compose_maps(p2.map, t.right.map).table)
    return GSpan(left, right)


def add_gspans(s: GSpan, t: GSpan) -> GSpan:
    if s.source != t.source or s.target != t.target:
        raise CompositionMismatch("spans must share endpoints to be added")
    mid = disjoint_union(s.middle, t.middle)
    return GSpan(gmap(mid, s.source, s.left.map.table + t.left.map.table),
                 gmap(mid, s.target, s.right.map.table + t.right.map.table))


def _local_classes(g: FiniteGroup, s: frozenset) -> list[tuple]:
    """Subgroups of ``s`` up to conjugation by ``s``."""
    subs = [h for h in all_subgroups(g) if h <= s]
    reps = sorted({_canonical_subgroup(g, h, sorted(s)) for h in subs}, key=lambda r: (len(r), r))
    return reps


def gspan_class(span: GSpan) -> tuple:
    """Canonical iso class of an equivariant span over ``source x target``.

    For each orbit of ``source x target`` (represented by its least pair
    ``r``), the fiber over ``r`` is a ``Stab(r)``-set; it is recorded as the
    multiplicity of each subgroup of ``Stab(r)`` up to ``Stab(r)``-conjugacy.
    """
    x, y = span.source, span.target
    g = x.group
    base = gset_product(x, y)
    n = y.size
    over = [span.left(t) * n + span.right(t) for t in range(span.middle.size)]
    out = []
    for orbit in base.orbits():
        r = orbit[0]
        stab = base.stabilizer(r)
        reps = _local_classes(g, stab)
        fiber = [t for t, b in enumerate(over) if b == r]
        counts = [0] * len(reps)
        seen = set()
        for t in fiber:
            if t in seen:
                continue
            local_orbit = {span.middle.act(t, a) for a in stab}
            seen |= local_orbit
            k = frozenset(a for a in stab if span.middle.act(t, a) == t)
            counts[reps.index(_canonical_subgroup(g, k, sorted(stab)))] += 1
        out.append(tuple(counts))
    return tuple(out)


def gspan_from_class(x: GSet, y: GSet, data: Sequence[Sequence[int]]) -> GSpan:
    """Canonical representative for the class data of :func:`gspan_class`."""
    g = x.group
    base = gset_product(x, y)
    n = y.size
    mid = empty_gset(g)
    left, right = [], []
    for orbit, counts in zip(base.orbits(), data):
        r = orbit[0]
        reps = _local_classes(g, base.stabilizer(r))
        for k, c in zip(reps, counts):
            piece = coset_space(g, k)
            cosets = sorted({frozenset(g.mul(a, z) for a in k) for z in g}, key=min)
            for _ in range(c):
                for cos in cosets:
                    b = base.act(r, min(cos))
                    left.append(b // n)
                    right.append(b % n)
                mid = disjoint_union(mid, piece)
    return GSpan(gmap(mid, x, left), gmap(mid, y, right))


def gspan_class_shape(x: GSet, y: GSet) -> list[int]:
    """Number of local subgroup classes for each orbit of ``x x y``."""
    g = x.group
    base = gset_product(x, y)
    return [len(_local_classes(g, base.stabilizer(o[0]))) for o in base.orbits()]


def enumerate_gspan_classes(x: GSet, y: GSet, max_entry: int) -> list[tuple]:
    shape = gspan_class_shape(x, y)
    per_orbit = [list(_cartesian(range(max_entry + 1), repeat=k)) for k in shape]
    return [tuple(c) for c in _cartesian(*per_orbit)]


# ---------------------------------------------------------------------------
# Elmendorf shadow: product-preserving functors vs presheaves on orbits

class OrbitCatalog:
    """G-sets with at most two orbits, built from the canonical orbits ``G/H``.

    Object 0 is empty, objects ``1..r`` are the orbits, and the rest are the
    disjoint unions ``G/H_i ⊔ G/H_j`` with ``i <= j``.
    """

    def __init__(self, g: FiniteGroup):
        self.group = g
        self.classes = subgroup_classes(g)
        self.orbits = [coset_space(g, c.rep) for c in self.classes]
        r = len(self.orbits)
        self.objects = [empty_gset(g)]
        self.components = [[]]
        for i in range(r):
            self.objects.append(self.orbits[i])
            self.components.append([(i, 0)])
        for i in range(r):
            for j in range(i, r):
                self.objects.append(disjoint_union(self.orbits[i], self.orbits[j]))
                self.components.append([(i, 0), (j, self.orbits[i].size)])
        self.maps = {(a, b): gset_maps(self.objects[a], self.objects[b])
                     for a in range(len(self.objects)) for b in range(len(self.objects))}

    def orbit_maps(self) -> dict:
        """``O_G`` morphisms between canonical orbits, keyed by ``(i, j)``."""
        return {(i, j): [f.map.table for f in self.maps[(i + 1, j + 1)]]
                for i in range(len(self.orbits)) for j in range(len(self.orbits))}

    def restrict(self, a: int, b: int, table) -> list[tuple]:
        """Split a map ``objects[a] -> objects[b]`` into orbit maps.

        Returns ``(component index in b, orbit map table)`` per component of ``a``.
        """
        out = []
        for i, off in self.components[a]:
            size = self.orbits[i].size
            images = [table[off + u] for u in range(size)]
            for d, (j, off_b) in enumerate(self.components[b]):
                if off_b <= images[0] < off_b + self.orbits[j].size:
                    out.append((d, tuple(v - off_b for v in images)))
                    break
        return out


@dataclass
class Presheaf:
    """Sets on canonical orbits and contravariant maps along orbit maps."""

    sizes: tuple
    maps: dict

    def key(self):
        return (self.sizes, tuple(sorted((k, v.table) for k, v in self.maps.items())))


def presheaf_violation(cat: OrbitCatalog, p: Presheaf) -> Optional[tuple]:
    om = cat.orbit_maps()
    r = len(cat.orbits)
    for i in range(r):
        ident = tuple(range(cat.orbits[i].size))
        if p.maps[(i, i, ident)].table != tuple(range(p.sizes[i])):
            return ("identity", i)
    for i in range(r):
        for j in range(r):
            for f in om[(i, j)]:
                for k in range(r):
                    for g in om[(j, k)]:
                        gf = tuple(g[v] for v in f)
                        lhs = p.maps[(i, k, gf)]
                        rhs = fs.compose_maps(p.maps[(j, k, g)], p.maps[(i, j, f)])
                        if lhs != rhs:
                            return ("composition", (i, j, f), (j, k, g))
    return None


def enumerate_orbit_data(cat: OrbitCatalog, size: int) -> list[Presheaf]:
    """All assignments of sets (size <= ``size``) and maps along orbit maps."""
    om = cat.orbit_maps()
    keys = [(i, j, f) for (i, j), fl in sorted(om.items()) for f in fl]
    out = []
    r = len(cat.orbits)
    for sizes in _cartesian(range(size + 1), repeat=r):
        options = [list(fs.enumerate_maps(FinSet(sizes[j]), FinSet(sizes[i]))) for i, j, _ in keys]
        for choice in _cartesian(*options):
            out.append(Presheaf(tuple(sizes), dict(zip(keys, choice))))
    return out


@dataclass
class GFunctor:
    """A contravariant functor on the catalog: values and maps ``F(b) -> F(a)``."""

    values: dict
    maps: dict


def extend_presheaf(cat: OrbitCatalog, p: Presheaf) -> GFunctor:
    """Extend orbit data to the catalog by sending disjoint unions to products."""
    values = {}
    for a, comps in enumerate(cat.components):
        size = 1
        for i, _ in comps:
            size *= p.sizes[i]
        values[a] = FinSet(size)
    maps = {}
    for (a, b), fl in cat.maps.items():
        for f in fl:
            parts = cat.restrict(a, b, f.map.table)
            b_sizes = [p.sizes[i] for i, _ in cat.components[b]]
            a_sizes = [p.sizes[i] for i, _ in cat.components[a]]
            table = []
            for y in range(values[b].size):
                ys = _digits(y, b_sizes)
                xs = [p.maps[(cat.components[a][c][0], cat.components[b][d][0], t)](ys[d])
                      for c, (d, t) in enumerate(parts)]
                table.append(_undigits(xs, a_sizes))
            maps[(a, b, f.map.table)] = FinMap(values[b], values[a], table)
    return GFunctor(values, maps)


def restrict_functor(cat: OrbitCatalog, f: GFunctor) -> Presheaf:
    r = len(cat.orbits)
    sizes = tuple(f.values[i + 1].size for i in range(r))
    maps = {}
    for (i, j), fl in cat.orbit_maps().items():
        for t in fl:
            maps[(i, j, t)] = f.maps[(i + 1, j + 1, t)]
    return Presheaf(sizes, maps)


def gfunctor_violation(cat: OrbitCatalog, f: GFunctor) -> Optional[tuple]:
    """First failure of functoriality or of sending unions to products."""
    n = len(cat.objects)
    if f.values[0].size != 1:
        return ("empty G-set must go to a point", 0)
    for a, comps in enumerate(cat.components):
        if len(comps) != 2:
            continue
        (i, off_i), (j, off_j) = comps
        inc = [tuple(off_i + u for u in range(cat.orbits[i].size)),
               tuple(off_j + u for u in range(cat.orbits[j].size))]
        legs = [f.maps[(i + 1, a, inc[0])], f.maps[(j + 1, a, inc[1])]]
        images = {(legs[0](x), legs[1](x)) for x in range(f.values[a].size)}
        if len(images) != f.values[a].size or \
                f.values[a].size != f.values[i + 1].size * f.values[j + 1].size:
            return ("product", a)
    for a in range(n):
        ident = tuple(range(cat.objects[a].size))
        if f.maps[(a, a, ident)].table != tuple(range(f.values[a].size)):
            return ("identity", a)
    for a in range(n):
        for b in range(n):
            for g1 in cat.maps[(a, b)]:
                for c in range(n):
                    for g2 in cat.maps[(b, c)]:
                        comp = tuple(g2.map(v) for v in g1.map.table)
                        lhs = f.maps[(a, c, comp)]
                        rhs = fs.compose_maps(f.maps[(b, c, g2.map.table)],
                                              f.maps[(a, b, g1.map.table)])
                        if lhs != rhs:
                            return ("composition", (a, b, g1.map.table), (b, c, g2.map.table))
    return None


def elmendorf_report(g: FiniteGroup, size: int) -> dict:
    """Restriction to orbits is a bijection from product-preserving functors to presheaves.

    Every candidate assignment on orbits is extended to the catalog. The
    candidates whose extension is a product-preserving functor must be exactly
    the presheaves, and restricting the extension must give the candidate back.
    """
    cat = OrbitCatalog(g)
    candidates = enumerate_orbit_data(cat, size)
    presheaves, functors, round_trip = 0, 0, True
    agree = True
    for c in candidates:
        is_pre = presheaf_violation(cat, c) is None
        ext = extend_presheaf(cat, c)
        is_fun = gfunctor_violation(cat, ext) is None
        presheaves += is_pre
        functors += is_fun
        agree &= is_pre == is_fun
        if is_fun:
            round_trip &= restrict_functor(cat, ext).key() == c.key()
    return {"group": g.name, "size": size, "candidates": len(candidates),
            "presheaves": presheaves, "functors": functors,
            "ok": agree and round_trip and presheaves == functors}


def elmendorf_shadow(g: FiniteGroup, size: int) -> bool:
    return elmendorf_report(g, size)["ok"]


def _digits(x: int, sizes: Sequence[int]) -> list[int]:
    out = []
    for s in reversed(sizes):
        x, r = divmod(x, s)
        out.append(r)
    return list(reversed(out))


def _undigits(xs: Sequence[int], sizes: Sequence[int]) -> int:
    out = 0
    for x, s in zip(xs, sizes):
        out = out * s + x
    return out
