import itertools
import random

import pytest

from lawvere import kronecker as kr
from lawvere import semimat as sm
from lawvere import theory as th
from lawvere.errors import ConfigurationError
from lawvere.models import check_model, enumerate_models, search_models

SMALL = ["trivial", "pointed-set", "monoid", "cmon"]


def test_interchange_equation_shape():
    f, g = th.OpSym("f", 2), th.OpSym("g", 3)
    eq = kr.interchange_equation(f, g)
    assert eq.context_size == 6
    assert str(eq.lhs) == "f(g(x0,x1,x2),g(x3,x4,x5))"
    assert str(eq.rhs) == "g(f(x0,x3),f(x1,x4),f(x2,x5))"
    nullary = kr.interchange_equation(th.OpSym("e", 0), th.OpSym("u", 0))
    assert nullary.context_size == 0 and str(nullary) == "(0) e = u"


@pytest.mark.parametrize("a,b", list(itertools.product(SMALL + ["group"], repeat=2)))
def test_counts(a, b):
    p1, p2 = th.builtin_theory(a), th.builtin_theory(b)
    prod = kr.kronecker_presentation(p1, p2)
    assert len(prod.ops) == len(p1.ops) + len(p2.ops)
    assert len(prod.eqs) == len(p1.eqs) + len(p2.eqs) + len(p1.ops) * len(p2.ops)
    assert prod.normalizer is None


def test_renaming_on_clash():
    prod = kr.kronecker_presentation(th.monoid_theory(), th.monoid_theory())
    assert [o.name for o in prod.ops] == ["e_1", "m_1", "e_2", "m_2"]
    prod = kr.kronecker_presentation(th.monoid_theory(), th.abelian_group_theory())
    assert [o.name for o in prod.ops] == ["e", "m", "z", "a", "inv"]


def test_monoid_units_coincide():
    prod = kr.kronecker_presentation(th.monoid_theory(), th.monoid_theory())
    for n in (1, 2, 3):
        for m in search_models(prod, n):
            assert m.tables[0] == m.tables[2]


@pytest.mark.parametrize("a,b", list(itertools.product(SMALL, repeat=2)))
def test_bimodel_check(a, b):
    assert kr.bimodel_check(th.builtin_theory(a), th.builtin_theory(b), 3)


def test_bimodel_pairs_share_multiplication():
    """Componentwise filter on two points: compatible monoid pairs coincide."""
    mon = th.monoid_theory()
    models = search_models(mon, 2)
    pairs = [(x, y) for x in models for y in models if kr.is_bimodel(x, y)]
    assert pairs and all(x.tables[1] == y.tables[1] for x, y in pairs)


@pytest.mark.parametrize("name", ["monoid", "cmon", "pointed-set"])
def test_unit(name):
    assert kr.unit_check(th.builtin_theory(name), 3)


def test_swap():
    assert kr.swap_check(th.monoid_theory(), th.pointed_set_theory(), 3)
    assert kr.swap_check(th.cmon_theory(), th.monoid_theory(), 2)


def test_pointed_pointed():
    prod = kr.kronecker_presentation(th.pointed_set_theory(), th.pointed_set_theory())
    for n in range(4):
        found = search_models(prod, n)
        assert len(found) == n and all(m.tables[0] == m.tables[1] for m in found)


@pytest.mark.parametrize("size,count", [(1, 1), (2, 2), (3, 5)])
def test_eckmann_hilton(size, count):
    rep = kr.eckmann_hilton_report(size)
    assert rep.ok and rep.collapse
    assert rep.monmon_count == rep.cmon_count == count
    assert len(enumerate_models(th.cmon_theory(), size)) == count


@pytest.mark.parametrize("name", sm.BUILTIN_SEMIRINGS)
def test_day_tensor(name):
    r = sm.semiring_by_name(name)
    rng = random.Random(1)
    one = sm.identity_matrix(r, 1)
    for _ in range(60):
        a = sm.random_matrix(r, rng.randint(0, 3), rng.randint(0, 3), rng)
        b = sm.random_matrix(r, rng.randint(0, 3), rng.randint(0, 3), rng)
        assert kr.day_tensor_fgf(r, one, b) == b
        assert kr.symmetry_conjugate(a, b) == kr.day_tensor_fgf(r, b, a)


def test_day_tensor_semiring_mismatch():
    with pytest.raises(ConfigurationError):
        kr.day_tensor_fgf(sm.NATURALS, sm.identity_matrix(sm.BOOLEAN, 1), sm.identity_matrix(sm.BOOLEAN, 1))


def test_report_json():
    rep = kr.eckmann_hilton_report(2)
    assert '"ok": true' in rep.to_json()
