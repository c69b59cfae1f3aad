import json

import pytest

from lawvere.cli import main, render_table


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_models_cmon_two(capsys, fixtures):
    r = report(capsys, "models", "--theory", str(fixtures / "cmon.thy"), "--size", "2", "--up-to-iso")
    assert set(r) == {"command", "inputs", "results", "timings"}
    assert r["timings"] == {}
    assert r["results"]["sizes"][0]["count"] == 2
    assert len(r["results"]["sizes"][0]["models"]) == 2


def test_marks_from_file(capsys, fixtures):
    r = report(capsys, "marks", "--group", str(fixtures / "c2.json"))
    assert r["results"]["marks"] == [[2, 0], [1, 1]]
    assert [c["name"] for c in r["results"]["classes"]] == ["H0", "H1"]


def test_kron_check(capsys, fixtures):
    r = report(capsys, "kron", "--left", str(fixtures / "triv.thy"), "--right",
               str(fixtures / "cmon.thy"), "--check-bimodels", "--size", "3")
    assert r["results"]["bimodels"]["ok"]


def test_homs_free_yoneda_burnside_spans(capsys):
    assert report(capsys, "homs", "--theory", "cmon", "--source", "2", "--target", "2",
                  "--bound", "2")["results"]["count"] == 81
    assert report(capsys, "free", "--theory", "cmon", "--generators", "2",
                  "--bound", "2")["results"]["size"] == 6
    assert report(capsys, "yoneda", "--theory", "trivial", "--m", "2", "--n", "3")["results"]["ok"]
    b = report(capsys, "burnside", "--group", "C2")["results"]
    assert b["structure"][0][0] == [2, 0] and b["mark_homomorphism"]
    s = report(capsys, "spans", "--source", "2", "--target", "1", "--max-entry", "2", "--check")
    assert s["results"]["count"] == 9 and s["results"]["functorial"]


@pytest.mark.parametrize("prop,extra", [
    ("eckmann-hilton", ["--size", "2"]), ("elmendorf", ["--group", "C2", "--size", "1"]),
    ("semiadditive", ["--semiring", "Z/2", "--size", "2"]),
    ("trivial-equivalence", ["--size", "2"]), ("cmon-spans", ["--size", "2"]),
    ("unit", ["--theory", "monoid", "--size", "2"]),
])
def test_check_properties(capsys, prop, extra):
    code, out, err = run(capsys, "check", "--property", prop, *extra)
    assert code == 0, err


def test_check_failure_exits_one(capsys, monkeypatch):
    from lawvere import kronecker
    monkeypatch.setattr(kronecker, "unit_check", lambda p, size: False)
    code, out, _ = run(capsys, "check", "--property", "unit", "--theory", "monoid")
    assert code == 1
    assert json.loads(out)["results"] == {"ok": False}


@pytest.mark.parametrize("args,code,kind", [
    (["models", "--theory", "FIXTURE/bad_syntax.thy", "--size", "1"], 2, "syntax"),
    (["models", "--theory", "FIXTURE/bad_arity.thy", "--size", "1"], 3, "semantic"),
    (["models", "--theory", "no-such-theory", "--size", "1"], 3, "input"),
    (["models", "--theory", "cmon", "--size", "-1"], 2, "usage"),
    (["nonsense"], 2, "usage"),
    (["marks", "--group", "Q8"], 3, "input"),
    (["models", "--theory", "monoid", "--size", "4", "--budget", "10"], 4, "budget"),
    (["free", "--theory", "FIXTURE/semilattice.thy"], 3, "input"),
])
def test_error_paths(capsys, fixtures, args, code, kind):
    args = [a.replace("FIXTURE", str(fixtures)) for a in args]
    got, out, err = run(capsys, *args)
    assert got == code
    assert out == ""
    assert err.startswith(f"lawvere: error[{kind}]:")
    assert err.count("\n") == 1


def test_table_format(capsys):
    code, out, _ = run(capsys, "marks", "--group", "C2", "--format", "table")
    assert code == 0
    assert "marks:" in out and "- 2 0" in out and "- 1 1" in out


def test_timings_flag(capsys):
    r = report(capsys, "marks", "--group", "C2", "--timings")
    assert "total_seconds" in r["timings"]


def test_render_table_nested():
    text = render_table({"a": [[1, 2], [3]], "b": {"c": True}, "d": []})
    assert text.splitlines() == ["a:", "  - 1 2", "  - 3", "b:", "  c: yes", "d: "]
