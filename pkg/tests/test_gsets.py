import itertools
import random
from fractions import Fraction

import pytest

from lawvere import gsets as gs
from lawvere import spancat as sc
from lawvere.finset import FinMap
from lawvere.errors import BudgetExceeded, CompositionMismatch, StructureError

C2 = gs.cyclic_group(2)
GROUPS = {name: gs.group_by_name(name) for name in gs.BUILTIN_GROUPS}


def test_group_validation():
    with pytest.raises(StructureError):
        gs.FiniteGroup(2, [[0, 1], [1, 1]])
    with pytest.raises(StructureError):
        gs.FiniteGroup(3, [[0, 1, 2], [1, 0, 2], [2, 2, 0]])


def test_group_json_round_trip(fixtures):
    g = gs.FiniteGroup.from_json((fixtures / "c2.json").read_text())
    assert g == C2
    s3 = GROUPS["S3"]
    assert gs.FiniteGroup.from_json(s3.to_json()) == s3


@pytest.mark.parametrize("name,count", [("1", 1), ("C2", 2), ("C3", 2), ("C4", 3),
                                        ("C2xC2", 5), ("S3", 4)])
def test_subgroup_class_counts(name, count):
    classes = gs.subgroup_classes(GROUPS[name])
    assert len(classes) == count
    orders = [c.order for c in classes]
    assert orders == sorted(orders) and orders[0] == 1 and orders[-1] == GROUPS[name].order


def test_subgroups_by_brute_force():
    """Every subset closed under products is found."""
    for g in GROUPS.values():
        if g.order > 6:
            continue
        subsets = []
        for bits in range(1, 2 ** g.order):
            s = frozenset(i for i in g if bits >> i & 1)
            if g.identity in s and all(g.mul(a, b) in s for a in s for b in s):
                subsets.append(s)
        assert set(gs.all_subgroups(g)) == set(subsets)


def test_subgroup_budget():
    with pytest.raises(BudgetExceeded):
        gs.subgroup_classes(gs.cyclic_group(30))


def test_coset_space_is_transitive_with_right_stabilizer():
    for g in GROUPS.values():
        for c in gs.subgroup_classes(g):
            x = gs.coset_space(g, c.rep)
            assert x.size * c.order == g.order
            assert len(x.orbits()) == 1
            assert x.stabilizer(0) == frozenset(c.rep)


def test_orbit_decompose_examples():
    reg = gs.regular_gset(C2)
    d = gs.orbit_decompose(reg)
    assert d.counts == (1, 0)
    d = gs.orbit_decompose(gs.trivial_gset(C2, 3))
    assert d.counts == (0, 3)


def test_orbit_decompose_random_and_reconstruction():
    rng = random.Random(0)
    actions = gs.enumerate_gsets(C2, 4)
    for x in rng.sample(actions, 5) + [gs.gset_product(gs.regular_gset(GROUPS["S3"]),
                                                       gs.coset_space(GROUPS["S3"], {0, 1}))]:
        d = gs.orbit_decompose(x)
        for o, p, s in zip(d.orbits, d.points, d.stabilizers):
            assert s == frozenset(a for a in x.group if x.act(p, a) == p)
            assert len(o) * len(s) == x.group.order
        iso = d.reconstruction()
        assert iso.map.is_bijective()


@pytest.mark.parametrize("name", list(GROUPS))
def test_table_of_marks(name):
    g = GROUPS[name]
    marks = gs.table_of_marks(g)
    classes = gs.subgroup_classes(g)
    r = len(classes)
    for i in range(r):
        assert marks[i][0] == g.order // classes[i].order
        assert marks[i][i] > 0
        for j in range(i + 1, r):
            assert marks[i][j] == 0
    # oracle: |{g : g^-1 K g <= H}| / |H|
    for i, h in enumerate(classes):
        for j, k in enumerate(classes):
            count = sum(1 for x in g if gs.conjugate(g, k.rep, g.inv(x)) <= frozenset(h.rep))
            assert Fraction(count, h.order) == marks[i][j]


def test_marks_c2():
    assert gs.table_of_marks(C2) == [[2, 0], [1, 1]]


def test_marks_separate_c2_sets():
    seen = {}
    for n in range(5):
        for x in gs.enumerate_gsets(C2, n):
            key = gs.marks_of(C2, x)
            if key in seen:
                assert gs.are_isomorphic(seen[key], x)
            else:
                seen[key] = x
    classes = list(seen.values())
    for a, b in itertools.combinations(classes, 2):
        assert not gs.are_isomorphic(a, b)


def test_gset_maps_match_brute_force():
    from lawvere import finset as fs
    for x in gs.enumerate_gsets(C2, 3):
        for y in gs.enumerate_gsets(C2, 2):
            brute = sorted(f.table for f in fs.enumerate_maps(x.underlying, y.underlying)
                           if gs.is_equivariant(x, y, f.table))
            assert [f.map.table for f in gs.gset_maps(x, y)] == brute


def test_pullback_over_point_is_product():
    x, y = gs.regular_gset(C2), gs.coset_space(GROUPS["S3"], {0})
    s3 = GROUPS["S3"]
    a, b = gs.coset_space(s3, {0, 1}), gs.coset_space(s3, {0})
    pt = gs.trivial_gset(s3, 1)
    p, p1, p2 = gs.gset_pullback(gs.gmap(a, pt, [0] * a.size), gs.gmap(b, pt, [0] * b.size))
    assert p == gs.gset_product(a, b)


def test_compose_identity_and_mismatch():
    x = gs.regular_gset(C2)
    ident = gs.identity_gspan(x)
    assert gs.compose_gspans(ident, ident).underlying() == ident.underlying()
    with pytest.raises(CompositionMismatch):
        gs.compose_gspans(ident, gs.identity_gspan(gs.trivial_gset(C2, 1)))


def _spans(x, y, mids):
    return [gs.GSpan(l, r) for t in mids for l in gs.gset_maps(t, x) for r in gs.gset_maps(t, y)]


def test_forgetful_compatibility_sampled_c2_middles_4():
    rng = random.Random(5)
    ends = [x for n in range(3) for x in gs.enumerate_gsets(C2, n)]
    mids = [x for n in range(5) for x in gs.enumerate_gsets(C2, n)]
    for _ in range(300):
        x, y, z = (rng.choice(ends) for _ in range(3))
        s, t = rng.choice(_spans(x, y, mids) or [None]), rng.choice(_spans(y, z, mids) or [None])
        if s is None or t is None:
            continue
        assert gs.compose_gspans(s, t).underlying() == sc.compose_spans(s.underlying(), t.underlying())


def test_burnside_c2():
    b = gs.burnside_semiring(C2)
    assert b.mul((1, 0), (1, 0)) == (2, 0)
    for v in b.sample:
        assert b.mul(b.one, v) == v == b.mul(v, b.one)
    from lawvere.semimat import is_semiring
    assert is_semiring(b)


@pytest.mark.parametrize("name", list(GROUPS))
def test_mark_homomorphism(name):
    g = GROUPS[name]
    data = gs.BurnsideData(g)
    rng = random.Random(3)
    for _ in range(20):
        u = tuple(rng.randint(0, 2) for _ in range(data.rank))
        v = tuple(rng.randint(0, 2) for _ in range(data.rank))
        prod = data.mark_vector(data.mul(u, v))
        assert prod == tuple(a * b for a, b in zip(data.mark_vector(u), data.mark_vector(v)))
        assert data.vector(gs.gset_product(data.gset(u), data.gset(v))) == data.mul(u, v)


def test_gspan_class_round_trip_and_invariance():
    x, y = gs.regular_gset(C2), gs.trivial_gset(C2, 1)
    for data in gs.enumerate_gspan_classes(x, y, 2):
        s = gs.gspan_from_class(x, y, data)
        assert gs.gspan_class(s) == data
    s3 = GROUPS["S3"]
    a, b = gs.coset_space(s3, {0, 1}), gs.coset_space(s3, {0, 3, 4})
    for data in gs.enumerate_gspan_classes(a, b, 1):
        assert gs.gspan_class(gs.gspan_from_class(a, b, data)) == data


def test_gspan_class_detects_isomorphism():
    ends = [x for n in range(3) for x in gs.enumerate_gsets(C2, n)]
    mids = [x for n in range(4) for x in gs.enumerate_gsets(C2, n)]
    for x in ends:
        for y in ends:
            spans = _spans(x, y, mids)
            for s, t in itertools.combinations(spans, 2):
                same = gs.gspan_class(s) == gs.gspan_class(t)
                assert same == _spans_isomorphic(s, t)


def _spans_isomorphic(s, t):
    if s.middle.size != t.middle.size:
        return False
    return any(f.map.is_bijective()
               and all(t.left(f(i)) == s.left(i) and t.right(f(i)) == s.right(i)
                       for i in range(s.middle.size))
               for f in gs.gset_maps(s.middle, t.middle))


def test_elmendorf_examples():
    assert gs.elmendorf_shadow(gs.trivial_group(), 3)
    rep = gs.elmendorf_report(C2, 2)
    assert rep["ok"] and rep["presheaves"] == rep["functors"] == 12
    assert gs.elmendorf_shadow(gs.cyclic_group(3), 1)


def test_elmendorf_trivial_group_matches_sets():
    rep = gs.elmendorf_report(gs.trivial_group(), 3)
    assert rep["presheaves"] == 4


def test_elmendorf_corruption_is_caught():
    cat = gs.OrbitCatalog(C2)
    good = next(c for c in gs.enumerate_orbit_data(cat, 2)
                if gs.presheaf_violation(cat, c) is None and c.sizes == (2, 2))
    ext = gs.extend_presheaf(cat, good)
    assert gs.gfunctor_violation(cat, ext) is None
    two = next(a for a, comps in enumerate(cat.components) if len(comps) == 2)
    size = cat.objects[two].size
    ident = (two, two, tuple(range(size)))
    n = ext.values[two].size
    swapped = dict(ext.maps)
    swapped[ident] = FinMap(ext.values[two], ext.values[two], [1, 0] + list(range(2, n)))
    assert gs.gfunctor_violation(cat, gs.GFunctor(ext.values, swapped))[0] == "identity"
    # collapse the first inclusion: the comparison into the product stops being injective
    (i, off), _ = cat.components[two]
    inc = (i + 1, two, tuple(off + u for u in range(cat.orbits[i].size)))
    collapsed = dict(ext.maps)
    collapsed[inc] = FinMap(ext.values[two], ext.values[i + 1], [0] * n)
    assert gs.gfunctor_violation(cat, gs.GFunctor(ext.values, collapsed))[0] == "product"
