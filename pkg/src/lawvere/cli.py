"""Command-line entry point: ``lawvere <verb> [options]``.

Every verb prints one report ``{command, inputs, results, timings}``. Output
is deterministic: lists are sorted, randomness comes from ``--seed``, and
``timings`` stays empty unless ``--timings`` is given. Parallel work is
merged in submission order, so ``--jobs`` never changes the output.

Exit codes: 0 success, 1 a check failed, 2 syntax error, 3 semantic or input
error, 4 budget exhausted. Errors print a single line to stderr starting with
``lawvere: error[<kind>]:``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import gsets, kronecker, models, semimat, spancat, theory
from .dsl import DSLError, DSLSemanticError, DSLSyntaxError, format_theory, parse_theory
from .errors import BudgetExceeded, LawvereError

EXIT_OK, EXIT_CHECK, EXIT_SYNTAX, EXIT_SEMANTIC, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Inputs

def load_theory(spec: str) -> theory.Presentation:
    if spec in theory.BUILTIN_THEORIES or spec.startswith("module-over("):
        return theory.builtin_theory(spec)
    path = Path(spec)
    if not path.is_file():
        raise LawvereError(f"no built-in theory or file named {spec!r}")
    try:
        return parse_theory(path.read_text(encoding="utf-8"))
    except DSLError as e:
        e.path = spec
        raise


def load_group(spec: str) -> gsets.FiniteGroup:
    if spec in gsets.BUILTIN_GROUPS:
        return gsets.group_by_name(spec)
    path = Path(spec)
    if not path.is_file():
        raise LawvereError(f"no built-in group or file named {spec!r}")
    try:
        return gsets.FiniteGroup.from_json(path.read_text(encoding="utf-8"))
    except (ValueError, KeyError, TypeError) as e:
        raise LawvereError(f"{spec}: malformed group file ({e})") from None


def _pmap(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, *zip(*items)))


# ---------------------------------------------------------------------------
# Workers (module level so they pickle)

def _models_at(p, size, up_to_iso, budget):
    found = models.enumerate_models(p, size, up_to_iso, budget=budget)
    return {"size": size, "count": len(found), "models": [m.to_dict() for m in found]}


def _bimodels_at(p1, p2, size):
    prod = kronecker.kronecker_presentation(p1, p2)
    direct = models.search_models(prod, size)
    pairs = kronecker.bimodels(p1, p2, size)
    return {"size": size, "product_models": len(direct), "bimodels": len(pairs),
            "equal": [m.tables for m in direct] == [m.tables for m in pairs]}


def _yoneda(p, m, n, bound, samples, seed):
    return models.yoneda_report(p, m, n, bound, samples, seed)


def _eh(size):
    return kronecker.eckmann_hilton_report(size).to_dict()


# ---------------------------------------------------------------------------
# Verbs

def cmd_models(a):
    p = load_theory(a.theory)
    rows = _pmap(_models_at, [(p, n, a.up_to_iso, a.budget) for n in a.size], a.jobs)
    return {"theory": a.theory, "size": a.size, "up_to_iso": a.up_to_iso}, \
        {"theory": p.name, "sizes": rows}, True


def cmd_homs(a):
    p = load_theory(a.theory)
    homs = theory.hom_iter(p, a.source, a.target, a.bound)
    comps = [[str(c) for c in f.components] for f in homs]
    return {"theory": a.theory, "source": a.source, "target": a.target, "bound": a.bound}, \
        {"count": len(comps), "morphisms": comps}, True


def cmd_spans(a):
    classes = list(spancat.enumerate_classes(a.source, a.target, a.max_entry))
    results = {"count": len(classes), "classes": [c.to_list() for c in classes]}
    ok = True
    if a.check:
        back = list(spancat.enumerate_classes(a.target, a.source, a.max_entry))
        for c in classes:
            s = spancat.matrix_span(c)
            ok &= spancat.span_matrix(s) == c
            for d in back:
                t = spancat.matrix_span(d)
                ok &= spancat.span_matrix(spancat.compose_spans(s, t)) == spancat.matmul(d, c)
        results["functorial"] = ok
    return {"source": a.source, "target": a.target, "max_entry": a.max_entry, "check": a.check}, \
        results, ok


def cmd_kron(a):
    p1, p2 = load_theory(a.left), load_theory(a.right)
    prod = kronecker.kronecker_presentation(p1, p2)
    results = {"presentation": format_theory(prod), "ops": len(prod.ops), "eqs": len(prod.eqs)}
    ok = True
    if a.check_bimodels:
        rows = _pmap(_bimodels_at, [(p1, p2, n) for n in range(a.size + 1)], a.jobs)
        ok = all(r["equal"] for r in rows)
        results["bimodels"] = {"sizes": rows, "ok": ok}
    return {"left": a.left, "right": a.right, "size": a.size,
            "check_bimodels": a.check_bimodels}, results, ok


def cmd_free(a):
    p = load_theory(a.theory)
    fm = models.free_model(p, a.generators, a.bound)
    nz = theory.get_normalizer(p)
    elems = [str(nz.reify(k)) for k in fm.labels]
    return {"theory": a.theory, "generators": a.generators, "bound": a.bound}, \
        {"size": fm.size, "elements": elems}, True


def cmd_yoneda(a):
    p = load_theory(a.theory)
    items = [(p, m, n, a.bound, a.samples, a.seed) for m in a.m for n in a.n]
    rows = _pmap(_yoneda, items, a.jobs)
    ok = all(r["ok"] for r in rows)
    return {"theory": a.theory, "m": a.m, "n": a.n, "bound": a.bound, "samples": a.samples,
            "seed": a.seed}, {"pairs": rows, "ok": ok}, ok


def cmd_marks(a):
    g = load_group(a.group)
    return {"group": a.group}, gsets.marks_json(g), True


def cmd_burnside(a):
    g = load_group(a.group)
    data = gsets.BurnsideData(g)
    ok = True
    for i in range(data.rank):
        for j in range(data.rank):
            prod = data.mul(data.basis(i), data.basis(j))
            lhs = data.mark_vector(prod)
            rhs = tuple(x * y for x, y in zip(data.mark_vector(data.basis(i)),
                                              data.mark_vector(data.basis(j))))
            ok &= lhs == rhs
    results = data.to_json()
    results["one"] = list(data.one())
    results["marks"] = data.marks
    results["mark_homomorphism"] = ok
    return {"group": a.group}, results, ok


def cmd_check(a):
    prop = a.property
    inputs = {"property": prop, "size": a.size}
    if prop == "eckmann-hilton":
        rows = _pmap(_eh, [(n,) for n in range(1, a.size + 1)], a.jobs)
        ok = all(r["ok"] for r in rows)
        return inputs, {"sizes": rows, "ok": ok}, ok
    if prop == "elmendorf":
        inputs["group"] = a.group
        rep = gsets.elmendorf_report(load_group(a.group), a.size)
        return inputs, rep, rep["ok"]
    if prop == "semiadditive":
        inputs["semiring"] = a.semiring
        ok = semimat.semiadditive_check(semimat.semiring_by_name(a.semiring), a.size, seed=a.seed)
        return inputs, {"semiring": a.semiring, "ok": ok}, ok
    if prop == "trivial-equivalence":
        rep = models.trivial_theory_equivalence(a.size, seed=a.seed)
        return inputs, rep, rep["ok"]
    if prop == "cmon-spans":
        rows = []
        for n in range(1, a.size + 1):
            for m in models.enumerate_models(theory.cmon_theory(), n):
                back = models.spanfunctor_to_cmon(models.cmon_to_spanfunctor(m))
                same = models.canonical_form(back) == models.canonical_form(m)
                rows.append({"model": m.to_dict(), "round_trip": same})
        ok = all(r["round_trip"] for r in rows)
        return inputs, {"models": rows, "ok": ok}, ok
    if prop == "unit":
        inputs["theory"] = a.theory
        ok = kronecker.unit_check(load_theory(a.theory), a.size)
        return inputs, {"ok": ok}, ok
    raise LawvereError(f"unknown property {prop!r}")


COMMANDS = {"models": cmd_models, "homs": cmd_homs, "spans": cmd_spans, "kron": cmd_kron,
            "free": cmd_free, "yoneda": cmd_yoneda, "marks": cmd_marks,
            "burnside": cmd_burnside, "check": cmd_check}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=_jobs, default=1, help="worker processes, or 'max'")
    common.add_argument("--timings", action="store_true", help="record wall-clock timings")

    root = _Parser(prog="lawvere", description="Finite computations with algebraic theories.")
    sub = root.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("models", parents=[common], help="enumerate finite models")
    s.add_argument("--theory", required=True)
    s.add_argument("--size", type=_nat, nargs="+", required=True)
    s.add_argument("--up-to-iso", action="store_true")
    s.add_argument("--budget", type=_nat, default=10 * 10**6)

    s = sub.add_parser("homs", parents=[common], help="list syntactic morphisms m -> n")
    s.add_argument("--theory", required=True)
    s.add_argument("--source", type=_nat, required=True)
    s.add_argument("--target", type=_nat, required=True)
    s.add_argument("--bound", type=_nat, default=2)

    s = sub.add_parser("spans", parents=[common], help="span classes between finite sets")
    s.add_argument("--source", type=_nat, required=True)
    s.add_argument("--target", type=_nat, required=True)
    s.add_argument("--max-entry", type=_nat, default=1)
    s.add_argument("--check", action="store_true", help="verify the matrix dictionary")

    s = sub.add_parser("kron", parents=[common], help="Kronecker product of two theories")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--size", type=_nat, default=2)
    s.add_argument("--check-bimodels", action="store_true")

    s = sub.add_parser("free", parents=[common], help="truncated free model")
    s.add_argument("--theory", required=True)
    s.add_argument("--generators", type=_nat, default=1)
    s.add_argument("--bound", type=_nat, default=2)

    s = sub.add_parser("yoneda", parents=[common], help="reconstruct homs from free models")
    s.add_argument("--theory", required=True)
    s.add_argument("--m", type=_nat, nargs="+", default=[1])
    s.add_argument("--n", type=_nat, nargs="+", default=[1])
    s.add_argument("--bound", type=_nat, default=2)
    s.add_argument("--samples", type=_nat, default=50)

    s = sub.add_parser("marks", parents=[common], help="table of marks of a finite group")
    s.add_argument("--group", required=True)

    s = sub.add_parser("burnside", parents=[common], help="Burnside semiring structure constants")
    s.add_argument("--group", required=True)

    s = sub.add_parser("check", parents=[common], help="run a named property check")
    s.add_argument("--property", required=True,
                   choices=["eckmann-hilton", "elmendorf", "semiadditive", "trivial-equivalence",
                            "cmon-spans", "unit"])
    s.add_argument("--size", type=_nat, default=2)
    s.add_argument("--group", default="C2")
    s.add_argument("--semiring", default="B")
    s.add_argument("--theory", default="cmon")
    return root


def _nat(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return v


def _jobs(text: str) -> int:
    if text == "max":
        return os.cpu_count() or 1
    v = _nat(text)
    return v or (os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# Output

def render_table(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_table(v, indent + 1))
            elif isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{k}:")
                lines.extend(pad + "  " + ln for ln in v.rstrip("\n").split("\n"))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(render_table(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(ln for ln in lines if ln)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return not v
    return all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v)
    if isinstance(v, dict):
        return "{}"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _diagnose(kind: str, message: str) -> str:
    return f"lawvere: error[{kind}]: " + " ".join(str(message).split())


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(_diagnose("usage", e), file=sys.stderr)
        return EXIT_SYNTAX
    start = time.perf_counter()
    try:
        inputs, results, ok = COMMANDS[args.command](args)
    except DSLSyntaxError as e:
        print(_diagnose("syntax", f"{e.path}:{e}"), file=sys.stderr)
        return EXIT_SYNTAX
    except DSLSemanticError as e:
        print(_diagnose("semantic", f"{e.path}:{e}"), file=sys.stderr)
        return EXIT_SEMANTIC
    except BudgetExceeded as e:
        print(_diagnose("budget", e), file=sys.stderr)
        return EXIT_BUDGET
    except LawvereError as e:
        print(_diagnose("input", e), file=sys.stderr)
        return EXIT_SEMANTIC
    timings = {"total_seconds": round(time.perf_counter() - start, 6)} if args.timings else {}
    report = {"command": args.command, "inputs": inputs, "results": results, "timings": timings}
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True)
    else:
        text = render_table(report)
    sys.stdout.write(text + "\n")
    return EXIT_OK if ok else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
