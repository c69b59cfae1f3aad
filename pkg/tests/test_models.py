import itertools
import random

import pytest

from lawvere import models as md
from lawvere import spancat as sc
from lawvere import theory as th
from lawvere.errors import NoNormalizer, StructureError
from lawvere.finset import FinMap
from lawvere.models import Model

CMON = th.cmon_theory()


def cmon(size, unit, table):
    return md.make_model(CMON, size, {"e": [unit], "m": table})


XOR = cmon(2, 0, [0, 1, 1, 0])
JOIN = cmon(2, 0, [0, 1, 1, 1])


def test_check_model_examples():
    assert md.check_model(XOR)
    assert not md.check_model(cmon(2, 1, [0, 1, 1, 0]))


def test_brute_force_filter_matches_enumeration():
    p = th.monoid_theory()
    found = []
    for unit in range(2):
        for table in itertools.product(range(2), repeat=4):
            cand = Model(p, 2, ((unit,), table))
            if md.check_model(cand):
                found.append(cand)
    assert sorted(m.key() for m in found) == sorted(m.key() for m in md.search_models(p, 2))
    classes = {md.canonical_form(m) for m in found}
    assert len(classes) == len(md.enumerate_models(p, 2))


def test_enumerate_examples():
    two = md.enumerate_models(CMON, 2)
    assert len(two) == 2
    assert {m.key() for m in two} == {md.canonical_form(XOR).key(), md.canonical_form(JOIN).key()}
    for k in range(4):
        assert len(md.enumerate_models(th.trivial_theory(), k)) == 1
    assert len(md.enumerate_models(th.monoid_theory(), 2)) == 2


@pytest.mark.parametrize("name,counts", [
    ("cmon", [1, 2, 5]), ("monoid", [1, 2, 7]), ("pointed-set", [1, 1, 1]),
    ("group", [1, 1, 1]), ("abelian-group", [1, 1, 1]),
])
def test_iso_counts_and_orbit_recount(name, counts):
    p = th.builtin_theory(name)
    for size, want in zip((1, 2, 3), counts):
        assert len(md.enumerate_models(p, size)) == want
        assert md.orbit_recount(p, size) == want


def test_enumeration_is_deterministic():
    a = [m.to_json() for m in md.enumerate_models(th.monoid_theory(), 3)]
    b = [m.to_json() for m in md.enumerate_models(th.monoid_theory(), 3)]
    assert a == b


def test_model_json_round_trip():
    assert Model.from_json(CMON, XOR.to_json()) == XOR


def test_homs():
    homs = md.model_homs(XOR, XOR)
    assert any(h.map.table == (0, 1) for h in homs)
    for a in (XOR, JOIN):
        for b in (XOR, JOIN):
            assert sorted(md.search_homs(a, b)) == sorted(md.brute_force_homs(a, b))


def test_free_model_examples():
    f = md.free_model(CMON, 1, 3)
    assert f.size == 4
    assert f.apply("m", (f.element((1,)), f.element((2,)))) == f.element((3,))
    assert f.apply("m", (f.element((2,)), f.element((2,)))) is None
    assert md.free_model(CMON, 2, 2).size == 6
    for n in range(4):
        assert md.free_model(th.trivial_theory(), n, 5).size == n
    with pytest.raises(NoNormalizer):
        md.free_model(th.Presentation("magma", (th.OpSym("m", 2),)), 1, 2)


@pytest.mark.parametrize("name", ["cmon", "abelian-group"])
def test_freeness(name):
    p = th.builtin_theory(name)
    for size in (1, 2, 3):
        for m in md.enumerate_models(p, size):
            free = md.free_model(p, 1, max(size, 2))
            homs = md.search_homs(free, m)
            assert sorted(h[free.generator(0)] for h in homs) == list(range(size))


def test_yoneda_examples():
    rep = md.yoneda_report(CMON, 1, 1, 2)
    assert rep["ok"] and rep["homs"] == 3
    for a in range(3):
        for b in range(3):
            rep = md.yoneda_report(th.trivial_theory(), a, b, 2)
            assert rep["ok"] and rep["homs"] == b ** a
    for name in ("cmon", "monoid", "abelian-group", "trivial"):
        assert md.yoneda_check(th.builtin_theory(name), 0, 0, 2)


def test_functor_check_on_models_and_mutation():
    p = th.monoid_theory()
    for m in md.enumerate_models(p, 2):
        F = md.model_functor(m)
        assert md.functor_check(p, F, 2)
    m = md.enumerate_models(p, 3)[-1]
    F = md.model_functor(m)
    mult = list(F.operations["m"].table)
    mult[1] = (mult[1] + 1) % 3
    bad = md.FunctorData(p, F.objects, F.projections,
                         {**F.operations, "m": FinMap(F.objects[2], F.objects[1], mult)})
    assert not md.functor_check(p, bad, 2)
    assert md.functor_violation(p, bad, 2) is not None


def test_trivial_theory_equivalence():
    rep = md.trivial_theory_equivalence(3)
    assert rep["ok"]
    assert [s["size"] for s in rep["sets"]] == [0, 1, 2, 3]


def test_span_functor_examples():
    F = md.cmon_to_spanfunctor(XOR)
    add = F(sc.SpanClass(2, 1, [[1, 1]]))
    # F(2) = M^2 indexed lexicographically
    assert add.table == (0, 1, 1, 0)
    assert F(sc.identity_class(2)).table == (0, 1, 2, 3)
    for m in (XOR, JOIN):
        back = md.spanfunctor_to_cmon(md.cmon_to_spanfunctor(m))
        assert md.canonical_form(back) == md.canonical_form(m)


def test_span_functor_rejects_corruption():
    good = md.cmon_to_spanfunctor(JOIN)

    def action(a):
        out = good(a)
        if a == sc.SpanClass(2, 1, [[2, 0]]):
            return FinMap(out.dom, out.cod, [1 - v for v in out.table])
        return out

    bad = md.SpanFunctor(2, action)
    assert md.span_functor_violation(bad) is not None
    with pytest.raises(StructureError) as info:
        md.spanfunctor_to_cmon(bad)
    assert info.value.witness is not None
