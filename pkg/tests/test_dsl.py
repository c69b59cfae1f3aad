import pytest
from hypothesis import given, strategies as st

from lawvere import dsl
from lawvere import theory as th
from lawvere.dsl import DSLSemanticError, DSLSyntaxError, format_theory, parse_theory

CMON_SRC = ("theory cmon { op e : 0; op m : 2; eq (2) m(x0,x1) = m(x1,x0); "
            "eq (3) m(m(x0,x1),x2) = m(x0,m(x1,x2)); eq (1) m(e,x0) = x0; }")
FIXTURE_THEORIES = ["triv.thy", "pointed.thy", "monoid.thy", "cmon.thy", "abgroup.thy",
                    "semilattice.thy"]


def test_parse_cmon():
    p = parse_theory(CMON_SRC)
    assert len(p.ops) == 2 and len(p.eqs) == 3
    assert p == th.cmon_theory()


def test_builtin_normalizer_is_recognised():
    assert parse_theory(CMON_SRC).normalizer == "cmon"
    src = CMON_SRC.replace("eq (1) m(e,x0) = x0;", "")
    assert parse_theory(src).normalizer is None


@pytest.mark.parametrize("src,kind,where", [
    ("theory t { op m : 2; eq (1) m(x0) = x0; }", DSLSemanticError, (1, 29)),
    ("theory t { op m : 2; eq (1) n(x0) = x0; }", DSLSemanticError, (1, 29)),
    ("theory t { op m : 2; eq (1) m(x0,x1) = x0; }", DSLSemanticError, (1, 34)),
    ("theory t { op m : 2; op m : 1; }", DSLSemanticError, (1, 25)),
    ("theory t { op x3 : 0; }", DSLSemanticError, (1, 15)),
    ("theory t { op m : 2 }", DSLSyntaxError, (1, 21)),
    ("theory t {\n  op m : 2;\n  eq (1) m(x0,x0) == x0;\n}", DSLSyntaxError, (3, 20)),
    ("theory t { op m : 2; } extra", DSLSyntaxError, (1, 24)),
    ("theory t { op m : -2; }", DSLSyntaxError, (1, 19)),
    ("theory t { eq (0) e = e; }", DSLSemanticError, (1, 19)),
])
def test_errors_have_positions(src, kind, where):
    with pytest.raises(kind) as info:
        parse_theory(src)
    assert (info.value.line, info.value.col) == where


def test_ops_after_equations_are_rejected():
    with pytest.raises(DSLSyntaxError):
        parse_theory("theory t { op e : 0; eq (0) e = e; op f : 0; }")


@pytest.mark.parametrize("name", FIXTURE_THEORIES)
def test_fixture_round_trip(fixtures, name):
    p = parse_theory((fixtures / name).read_text(encoding="utf-8"))
    assert parse_theory(format_theory(p)) == p
    assert format_theory(parse_theory(format_theory(p))) == format_theory(p)


@pytest.mark.parametrize("name", list(th.BUILTIN_THEORIES))
def test_builtins_round_trip(name):
    p = th.builtin_theory(name)
    q = parse_theory(format_theory(p))
    assert (q.ops, q.eqs, q.normalizer) == (p.ops, p.eqs, p.normalizer)


def test_nullary_with_parentheses():
    p = parse_theory("theory t { op e : 0; op f : 1; eq (0) f(e()) = e; }")
    assert str(p.eqs[0].lhs) == "f(e)"


def test_comments_and_whitespace():
    p = parse_theory("# header\ntheory t {\n  op e : 0;  # unit\n}\n")
    assert p.ops == (th.OpSym("e", 0),)


@given(st.text(max_size=40))
def test_parser_only_raises_dsl_errors(text):
    try:
        parse_theory(text)
    except dsl.DSLError:
        pass
