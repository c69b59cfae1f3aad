import random

import pytest
from hypothesis import given, strategies as st

from lawvere import finset as fs
from lawvere.errors import BudgetExceeded, CompositionMismatch, PullbackMismatch, StructureError
from lawvere.finset import FinMap, FinSet


def maps(max_size=5):
    return st.integers(0, max_size).flatmap(
        lambda a: st.integers(1 if a else 0, max_size).flatmap(
            lambda b: st.lists(st.integers(0, max(b - 1, 0)), min_size=a, max_size=a).map(
                lambda t: FinMap(FinSet(a), FinSet(b), t))))


def test_finmap_validation():
    with pytest.raises(StructureError):
        FinMap(FinSet(2), FinSet(1), [0, 1])
    with pytest.raises(StructureError):
        FinMap(FinSet(2), FinSet(3), [0])


def test_compose_and_identity():
    f = FinMap(FinSet(3), FinSet(2), [0, 1, 1])
    g = FinMap(FinSet(2), FinSet(4), [3, 0])
    assert fs.compose_maps(f, g).table == (3, 0, 0)
    assert fs.compose_maps(fs.identity(FinSet(3)), f) == f
    with pytest.raises(CompositionMismatch):
        fs.compose_maps(g, f)


def test_product_is_lexicographic():
    p, p1, p2 = fs.product(FinSet(2), FinSet(3))
    assert p.size == 6
    assert [(p1(i), p2(i)) for i in range(6)] == [(a, b) for a in range(2) for b in range(3)]


def test_coproduct_blocks():
    s, i1, i2 = fs.coproduct(FinSet(2), FinSet(3))
    assert i1.table == (0, 1) and i2.table == (2, 3, 4)


def test_pullback_small_case():
    f = FinMap(FinSet(3), FinSet(2), [0, 0, 1])
    g = FinMap(FinSet(2), FinSet(2), [0, 1])
    p, p1, p2 = fs.pullback(f, g)
    assert list(zip(p1.table, p2.table)) == [(0, 0), (1, 0), (2, 1)]


def test_pullback_rejects_mismatch():
    with pytest.raises((PullbackMismatch, CompositionMismatch)):
        fs.pullback(FinMap(FinSet(1), FinSet(1), [0]), FinMap(FinSet(1), FinSet(2), [0]))


def test_pullback_cardinality_seeded():
    rng = random.Random(7)
    for _ in range(150):
        c = rng.randint(1, 5)
        a, b = rng.randint(0, 5), rng.randint(0, 5)
        f = FinMap(FinSet(a), FinSet(c), [rng.randrange(c) for _ in range(a)])
        g = FinMap(FinSet(b), FinSet(c), [rng.randrange(c) for _ in range(b)])
        p, p1, p2 = fs.pullback(f, g)
        assert p.size == sum(len(f.fiber(z)) * len(g.fiber(z)) for z in range(c))
        assert fs.compose_maps(p1, f) == fs.compose_maps(p2, g)


@given(maps(), st.data())
def test_pullback_universal_pairs(f, data):
    g = data.draw(st.lists(st.integers(0, f.cod.size - 1), max_size=4).map(
        lambda t: FinMap(FinSet(len(t)), f.cod, t))) if f.cod.size else fs.identity(f.cod)
    p, p1, p2 = fs.pullback(f, g)
    pairs = {(a, b) for a in range(f.dom.size) for b in range(g.dom.size) if f(a) == g(b)}
    assert set(zip(p1.table, p2.table)) == pairs and p.size == len(pairs)


def test_enumerate_maps_counts_and_budget():
    assert len(list(fs.enumerate_maps(FinSet(3), FinSet(2)))) == fs.count_maps(FinSet(3), FinSet(2)) == 8
    assert len(list(fs.enumerate_maps(FinSet(0), FinSet(0)))) == 1
    with pytest.raises(BudgetExceeded):
        list(fs.enumerate_maps(FinSet(10), FinSet(10), budget=1000))


@given(maps(4))
def test_bijections_invert(f):
    if f.is_bijective():
        assert fs.compose_maps(f, f.inverse()) == fs.identity(f.dom)
