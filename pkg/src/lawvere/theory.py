"""Single-sorted equational presentations and their syntactic categories.

A morphism ``m -> n`` of the syntactic category is a tuple of ``n`` terms in
the variables ``x0 .. x{m-1}``. Composition is substitution. Term equality is
decided by a registered normal-form procedure where one exists, and is
otherwise semidecided by bounded rewriting (:func:`bounded_eq`).
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterator, Optional, Sequence, Union

from .errors import (BudgetExceeded, CompositionMismatch, ConfigurationError,
                     ContextError, NoNormalizer)
from .finset import DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        if not self.args:
            return self.op
        return f"{self.op}({','.join(map(str, self.args))})"


Term = Union[Var, App]


def var(i: int) -> Var:
    return Var(i)


def app(op: str, *args: Term) -> App:
    return App(op, args)


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for a in t.args:
        out |= variables(a)
    return out


def context_of(*terms: Term) -> int:
    vs = set().union(*(variables(t) for t in terms)) if terms else set()
    return max(vs) + 1 if vs else 0


def symbols(t: Term) -> set[str]:
    if isinstance(t, Var):
        return set()
    out = {t.op}
    for a in t.args:
        out |= symbols(a)
    return out


def substitute(t: Term, env: Sequence[Term]) -> Term:
    """Simultaneous substitution ``x_i := env[i]``."""
    if isinstance(t, Var):
        if t.index >= len(env):
            raise ContextError(f"x{t.index} is unbound in a context of size {len(env)}")
        return env[t.index]
    return App(t.op, tuple(substitute(a, env) for a in t.args))


# ---------------------------------------------------------------------------
# Presentations

@dataclass(frozen=True)
class OpSym:
    name: str
    arity: int


@dataclass(frozen=True)
class Equation:
    context_size: int
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"({self.context_size}) {self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    name: str
    ops: tuple
    eqs: tuple = ()
    normalizer: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        object.__setattr__(self, "eqs", tuple(self.eqs))
        names = [o.name for o in self.ops]
        if len(set(names)) != len(names):
            raise ConfigurationError(f"duplicate operation names in {self.name}")
        for eq in self.eqs:
            for side in (eq.lhs, eq.rhs):
                check_term(side, self, eq.context_size)

    @property
    def arities(self) -> dict[str, int]:
        return {o.name: o.arity for o in self.ops}

    def op(self, name: str) -> OpSym:
        for o in self.ops:
            if o.name == name:
                return o
        raise KeyError(name)

    def with_normalizer(self, tag: Optional[str]) -> "Presentation":
        return Presentation(self.name, self.ops, self.eqs, tag)


def check_term(t: Term, p: Presentation, context: Optional[int] = None) -> None:
    ar = p.arities
    if isinstance(t, Var):
        if context is not None and t.index >= context:
            raise ContextError(f"x{t.index} outside context of size {context}")
        return
    if t.op not in ar:
        raise ConfigurationError(f"undeclared operation {t.op!r}")
    if len(t.args) != ar[t.op]:
        raise ConfigurationError(f"{t.op} expects {ar[t.op]} arguments, got {len(t.args)}")
    for a in t.args:
        check_term(a, p, context)


def _eq(n, lhs, rhs):
    return Equation(n, lhs, rhs)


x0, x1, x2 = Var(0), Var(1), Var(2)


def trivial_theory() -> Presentation:
    return Presentation("trivial", (), (), "trivial")


def pointed_set_theory() -> Presentation:
    return Presentation("pointed-set", (OpSym("p", 0),), (), "pointed-set")


def monoid_theory() -> Presentation:
    e, m = App("e"), (lambda a, b: App("m", (a, b)))
    return Presentation("monoid", (OpSym("e", 0), OpSym("m", 2)), (
        _eq(3, m(m(x0, x1), x2), m(x0, m(x1, x2))),
        _eq(1, m(e, x0), x0),
        _eq(1, m(x0, e), x0),
    ), "monoid")


def cmon_theory() -> Presentation:
    e, m = App("e"), (lambda a, b: App("m", (a, b)))
    return Presentation("cmon", (OpSym("e", 0), OpSym("m", 2)), (
        _eq(2, m(x0, x1), m(x1, x0)),
        _eq(3, m(m(x0, x1), x2), m(x0, m(x1, x2))),
        _eq(1, m(e, x0), x0),
    ), "cmon")


def group_theory() -> Presentation:
    e, m, inv = App("e"), (lambda a, b: App("m", (a, b))), (lambda a: App("inv", (a,)))
    return Presentation("group", (OpSym("e", 0), OpSym("m", 2), OpSym("inv", 1)), (
        _eq(3, m(m(x0, x1), x2), m(x0, m(x1, x2))),
        _eq(1, m(e, x0), x0),
        _eq(1, m(x0, e), x0),
        _eq(1, m(inv(x0), x0), e),
        _eq(1, m(x0, inv(x0)), e),
    ), "group")


def abelian_group_theory() -> Presentation:
    z, a, inv = App("z"), (lambda u, v: App("a", (u, v))), (lambda u: App("inv", (u,)))
    return Presentation("abelian-group", (OpSym("z", 0), OpSym("a", 2), OpSym("inv", 1)), (
        _eq(2, a(x0, x1), a(x1, x0)),
        _eq(3, a(a(x0, x1), x2), a(x0, a(x1, x2))),
        _eq(1, a(z, x0), x0),
        _eq(1, a(x0, inv(x0)), z),
    ), "abelian-group")


def module_theory(semiring_name: str) -> Presentation:
    """Modules over a finite built-in semiring, one unary scalar op per element."""
    from .semimat import semiring_by_name
    r = semiring_by_name(semiring_name)
    if r.elements is None:
        raise ConfigurationError("module theories need a finite semiring")
    z, a = App("z"), (lambda u, v: App("a", (u, v)))
    s = {c: (lambda u, c=c: App(f"s{c}", (u,))) for c in r.elements}
    ops = [OpSym("z", 0), OpSym("a", 2)] + [OpSym(f"s{c}", 1) for c in r.elements]
    eqs = [
        _eq(2, a(x0, x1), a(x1, x0)),
        _eq(3, a(a(x0, x1), x2), a(x0, a(x1, x2))),
        _eq(1, a(z, x0), x0),
        _eq(1, s[r.one](x0), x0),
        _eq(1, s[r.zero](x0), z),
    ]
    for c in r.elements:
        eqs.append(_eq(2, s[c](a(x0, x1)), a(s[c](x0), s[c](x1))))
        eqs.append(_eq(0, s[c](z), z))
        for d in r.elements:
            eqs.append(_eq(1, s[c](s[d](x0)), s[r.mul(c, d)](x0)))
            eqs.append(_eq(1, a(s[c](x0), s[d](x0)), s[r.add(c, d)](x0)))
    return Presentation(f"module-over({semiring_name})", ops, eqs, f"module-over({semiring_name})")


BUILTIN_THEORIES = {
    "trivial": trivial_theory,
    "pointed-set": pointed_set_theory,
    "monoid": monoid_theory,
    "cmon": cmon_theory,
    "group": group_theory,
    "abelian-group": abelian_group_theory,
}


def builtin_theory(name: str) -> Presentation:
    if name.startswith("module-over(") and name.endswith(")"):
        return module_theory(name[len("module-over("):-1])
    try:
        return BUILTIN_THEORIES[name]()
    except KeyError:
        raise ConfigurationError(f"unknown built-in theory {name!r}") from None


# ---------------------------------------------------------------------------
# Normal forms
#
# A normalizer evaluates terms in the free model, whose elements ("keys") are
# hashable canonical data: exponent vectors, reduced words, and so on.

class Normalizer:
    tag = ""

    def var(self, i: int, arity: int):
        raise NotImplementedError

    def apply(self, op: str, args: tuple, arity: int):
        raise NotImplementedError

    def reify(self, key) -> Term:
        raise NotImplementedError

    def degree(self, key) -> int:
        raise NotImplementedError

    def keys_by_entry(self, arity: int, bound: int) -> list:
        """Normal forms whose coefficients (or word length) are within ``bound``."""
        raise NotImplementedError

    def keys_by_degree(self, arity: int, bound: int) -> list:
        """Normal forms of total degree at most ``bound``, in canonical order."""
        raise NotImplementedError

    def evaluate(self, t: Term, arity: int):
        if isinstance(t, Var):
            if t.index >= arity:
                raise ContextError(f"x{t.index} outside context of size {arity}")
            return self.var(t.index, arity)
        return self.apply(t.op, tuple(self.evaluate(a, arity) for a in t.args), arity)


def _nest(op: str, parts: list, unit: Term) -> Term:
    if not parts:
        return unit
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = App(op, (p, out))
    return out


def _vectors(arity, lo, hi):
    return list(_cartesian(range(lo, hi + 1), repeat=arity))


class TrivialNormalizer(Normalizer):
    tag = "trivial"

    def var(self, i, arity):
        return i

    def apply(self, op, args, arity):
        raise ConfigurationError(f"the trivial theory has no operation {op!r}")

    def reify(self, key):
        return Var(key)

    def degree(self, key):
        return 1

    def keys_by_entry(self, arity, bound):
        return list(range(arity))

    def keys_by_degree(self, arity, bound):
        return list(range(arity)) if bound >= 1 else []


class PointedNormalizer(Normalizer):
    """Keys are variable indices, with ``-1`` for the basepoint."""

    tag = "pointed-set"

    def var(self, i, arity):
        return i

    def apply(self, op, args, arity):
        return -1

    def reify(self, key):
        return App("p") if key == -1 else Var(key)

    def degree(self, key):
        return 0 if key == -1 else 1

    def keys_by_entry(self, arity, bound):
        return [-1] + list(range(arity))

    def keys_by_degree(self, arity, bound):
        return [-1] + (list(range(arity)) if bound >= 1 else [])


class MonoidNormalizer(Normalizer):
    """Keys are words (tuples of variable indices)."""

    tag = "monoid"

    def var(self, i, arity):
        return (i,)

    def apply(self, op, args, arity):
        return () if op == "e" else args[0] + args[1]

    def reify(self, key):
        return _nest("m", [Var(i) for i in key], App("e"))

    def degree(self, key):
        return len(key)

    def keys_by_entry(self, arity, bound):
        return self.keys_by_degree(arity, bound)

    def keys_by_degree(self, arity, bound):
        out = []
        for n in range(bound + 1):
            out.extend(_cartesian(range(arity), repeat=n))
        return out


class CMonNormalizer(Normalizer):
    """Keys are exponent vectors in N^arity."""

    tag = "cmon"

    def var(self, i, arity):
        return tuple(int(j == i) for j in range(arity))

    def apply(self, op, args, arity):
        if op == "e":
            return (0,) * arity
        return tuple(u + v for u, v in zip(*args))

    def reify(self, key):
        return _nest("m", [Var(i) for i, c in enumerate(key) for _ in range(c)], App("e"))

    def degree(self, key):
        return sum(key)

    def keys_by_entry(self, arity, bound):
        return _vectors(arity, 0, bound)

    def keys_by_degree(self, arity, bound):
        return sorted((v for v in _vectors(arity, 0, bound) if sum(v) <= bound),
                      key=lambda v: (sum(v), tuple(-c for c in v)))


class GroupNormalizer(Normalizer):
    """Keys are freely reduced words of (variable, ±1) letters."""

    tag = "group"

    def var(self, i, arity):
        return ((i, 1),)

    def apply(self, op, args, arity):
        if op == "e":
            return ()
        if op == "inv":
            return tuple((i, -s) for i, s in reversed(args[0]))
        out = list(args[0])
        for letter in args[1]:
            if out and out[-1] == (letter[0], -letter[1]):
                out.pop()
            else:
                out.append(letter)
        return tuple(out)

    def reify(self, key):
        return _nest("m", [Var(i) if s == 1 else App("inv", (Var(i),)) for i, s in key], App("e"))

    def degree(self, key):
        return len(key)

    def keys_by_entry(self, arity, bound):
        return self.keys_by_degree(arity, bound)

    def keys_by_degree(self, arity, bound):
        letters = [(i, s) for i in range(arity) for s in (1, -1)]
        out, layer = [()], [()]
        for _ in range(bound):
            nxt = []
            for w in layer:
                for l in letters:
                    if not (w and w[-1] == (l[0], -l[1])):
                        nxt.append(w + (l,))
            out.extend(nxt)
            layer = nxt
        return out


class AbelianNormalizer(Normalizer):
    """Keys are integer vectors in Z^arity."""

    tag = "abelian-group"

    def var(self, i, arity):
        return tuple(int(j == i) for j in range(arity))

    def apply(self, op, args, arity):
        if op == "z":
            return (0,) * arity
        if op == "inv":
            return tuple(-c for c in args[0])
        return tuple(u + v for u, v in zip(*args))

    def reify(self, key):
        parts = []
        for i, c in enumerate(key):
            atom = Var(i) if c > 0 else App("inv", (Var(i),))
            parts.extend([atom] * abs(c))
        return _nest("a", parts, App("z"))

    def degree(self, key):
        return sum(map(abs, key))

    def keys_by_entry(self, arity, bound):
        return _vectors(arity, -bound, bound)

    def keys_by_degree(self, arity, bound):
        return sorted((v for v in _vectors(arity, -bound, bound) if sum(map(abs, v)) <= bound),
                      key=lambda v: (sum(map(abs, v)), tuple(-c for c in v)))


class ModuleNormalizer(Normalizer):
    """Keys are coefficient vectors over a finite semiring."""

    def __init__(self, semiring_name: str):
        from .semimat import semiring_by_name
        self.r = semiring_by_name(semiring_name)
        self.tag = f"module-over({semiring_name})"
        self._scalar = {f"s{c}": c for c in self.r.elements}

    def var(self, i, arity):
        return tuple(self.r.one if j == i else self.r.zero for j in range(arity))

    def apply(self, op, args, arity):
        r = self.r
        if op == "z":
            return (r.zero,) * arity
        if op == "a":
            return tuple(r.add(u, v) for u, v in zip(*args))
        c = self._scalar[op]
        return tuple(r.mul(c, u) for u in args[0])

    def reify(self, key):
        r = self.r
        parts = []
        for i, c in enumerate(key):
            if c == r.zero:
                continue
            parts.append(Var(i) if c == r.one else App(f"s{c}", (Var(i),)))
        return _nest("a", parts, App("z"))

    def degree(self, key):
        return 0

    def keys_by_entry(self, arity, bound):
        return list(_cartesian(self.r.elements, repeat=arity))

    def keys_by_degree(self, arity, bound):
        return self.keys_by_entry(arity, bound)


_NORMALIZERS = {
    "trivial": TrivialNormalizer,
    "pointed-set": PointedNormalizer,
    "monoid": MonoidNormalizer,
    "cmon": CMonNormalizer,
    "group": GroupNormalizer,
    "abelian-group": AbelianNormalizer,
}


@lru_cache(maxsize=None)
def _make_normalizer(tag: str) -> Normalizer:
    if tag.startswith("module-over(") and tag.endswith(")"):
        return ModuleNormalizer(tag[len("module-over("):-1])
    try:
        return _NORMALIZERS[tag]()
    except KeyError:
        raise ConfigurationError(f"unknown normalizer {tag!r}") from None


def get_normalizer(p: Presentation) -> Normalizer:
    if p.normalizer is None:
        raise NoNormalizer(f"presentation {p.name!r} has no normalizer")
    return _make_normalizer(p.normalizer)


def normal_form(t: Term, p: Presentation, arity: Optional[int] = None):
    """Canonical key of ``t`` (exponent vector, reduced word, ...)."""
    check_term(t, p)
    return get_normalizer(p).evaluate(t, context_of(t) if arity is None else arity)


def normalize(t: Term, p: Presentation, arity: Optional[int] = None) -> Term:
    """Canonical term equal to ``t`` modulo the equations of ``p``."""
    nz = get_normalizer(p)
    return nz.reify(normal_form(t, p, arity))


# ---------------------------------------------------------------------------
# Bounded rewriting

class Verdict(enum.Enum):
    EQUAL = "equal"
    UNKNOWN = "unknown"


def _match(pattern: Term, t: Term, binding: dict) -> bool:
    if isinstance(pattern, Var):
        bound = binding.get(pattern.index)
        if bound is None:
            binding[pattern.index] = t
            return True
        return bound == t
    if not isinstance(t, App) or t.op != pattern.op or len(t.args) != len(pattern.args):
        return False
    return all(_match(pa, ta, binding) for pa, ta in zip(pattern.args, t.args))


def _instantiate(t: Term, binding: dict) -> Term:
    if isinstance(t, Var):
        return binding[t.index]
    return App(t.op, tuple(_instantiate(a, binding) for a in t.args))


def _positions(t: Term, path=()):
    yield path, t
    if isinstance(t, App):
        for k, a in enumerate(t.args):
            yield from _positions(a, path + (k,))


def _replace(t: Term, path, new: Term) -> Term:
    if not path:
        return new
    k = path[0]
    args = list(t.args)
    args[k] = _replace(args[k], path[1:], new)
    return App(t.op, tuple(args))


def rewrites(t: Term, p: Presentation, fillers: Sequence[Term]) -> Iterator[Term]:
    """One-step rewrites of ``t`` by any equation, in either direction.

    Variables that occur only on the produced side are instantiated with
    every element of ``fillers``.
    """
    rules = []
    for eq in p.eqs:
        rules.append((eq.lhs, eq.rhs))
        rules.append((eq.rhs, eq.lhs))
    for path, sub in _positions(t):
        for lhs, rhs in rules:
            binding: dict = {}
            if not _match(lhs, sub, binding):
                continue
            free = sorted(variables(rhs) - set(binding))
            for choice in _cartesian(fillers, repeat=len(free)):
                b = dict(binding)
                b.update(zip(free, choice))
                yield _replace(t, path, _instantiate(rhs, b))


def bounded_eq(t1: Term, t2: Term, p: Presentation, size_bound: int,
               budget: int = 200_000) -> Verdict:
    """Search the rewrite closure of ``t1`` restricted to terms of size <= bound.

    Returns ``Verdict.EQUAL`` only when ``t2`` is actually reached, so the
    answer is sound; ``UNKNOWN`` covers both "different" and "not found".
    """
    if t1 == t2:
        return Verdict.EQUAL
    ctx = context_of(t1, t2)
    fillers = [Var(i) for i in range(ctx)] + [App(o.name) for o in p.ops if o.arity == 0]
    seen = {t1}
    queue = deque([t1])
    while queue:
        t = queue.popleft()
        for u in rewrites(t, p, fillers):
            if u in seen or term_size(u) > size_bound:
                continue
            if u == t2:
                return Verdict.EQUAL
            seen.add(u)
            if len(seen) > budget:
                return Verdict.UNKNOWN
            queue.append(u)
    return Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# Morphisms of the syntactic category

@dataclass(frozen=True)
class Morphism:
    """A morphism ``source -> target``: ``target`` terms over ``source`` variables."""

    source: int
    target: int
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.target:
            raise ContextError("component count must equal the target arity")
        for c in self.components:
            if variables(c) and max(variables(c)) >= self.source:
                raise ContextError(f"component {c} escapes context {self.source}")

    def __str__(self):
        return f"{self.source}->{self.target} ({', '.join(map(str, self.components))})"


def make_morphism(p: Presentation, source: int, components: Sequence[Term]) -> Morphism:
    """Build a morphism, storing normal forms when ``p`` has a normalizer."""
    comps = tuple(components)
    for c in comps:
        check_term(c, p, source)
    if p.normalizer is not None:
        nz = get_normalizer(p)
        comps = tuple(nz.reify(nz.evaluate(c, source)) for c in comps)
    return Morphism(source, len(comps), comps)


def identity_morphism(n: int, p: Optional[Presentation] = None) -> Morphism:
    comps = [Var(i) for i in range(n)]
    return make_morphism(p, n, comps) if p is not None else Morphism(n, n, comps)


def compose_morphisms(f: Morphism, g: Morphism, p: Presentation) -> Morphism:
    """``f: m -> n`` then ``g: n -> k``; substitutes ``f`` into ``g``."""
    if f.target != g.source:
        raise CompositionMismatch(f"cannot compose {f} with {g}")
    return make_morphism(p, f.source, [substitute(c, f.components) for c in g.components])


def morphism_keys(f: Morphism, p: Presentation) -> tuple:
    nz = get_normalizer(p)
    return tuple(nz.evaluate(c, f.source) for c in f.components)


def enumerate_terms(p: Presentation, arity: int, max_size: int) -> list[Term]:
    """All terms over ``arity`` variables with at most ``max_size`` nodes."""
    by_size: dict[int, list[Term]] = {1: [Var(i) for i in range(arity)]}
    for o in p.ops:
        if o.arity == 0:
            by_size[1].append(App(o.name))
    for s in range(2, max_size + 1):
        layer = []
        for o in p.ops:
            if o.arity == 0:
                continue
            for split in _compositions(s - 1, o.arity):
                for args in _cartesian(*(by_size.get(k, []) for k in split)):
                    layer.append(App(o.name, args))
        by_size[s] = layer
    return [t for s in range(1, max_size + 1) for t in by_size.get(s, [])]


def _compositions(total, parts):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def hom_iter(p: Presentation, m: int, n: int, size_bound: int,
             budget: int = DEFAULT_BUDGET) -> Iterator[Morphism]:
    """Distinct morphisms ``m -> n`` of the syntactic category.

    With a normalizer the enumeration is exact: each component ranges over the
    normal forms whose entries (or word length) are at most ``size_bound``.
    Without one, components are terms of size at most ``size_bound`` and
    duplicates are removed only when :func:`bounded_eq` proves them equal.
    """
    if p.normalizer is not None:
        nz = get_normalizer(p)
        keys = nz.keys_by_entry(m, size_bound)
        comps = [nz.reify(k) for k in keys]
    else:
        comps = []
        for t in enumerate_terms(p, m, size_bound):
            if all(bounded_eq(t, c, p, size_bound) is Verdict.UNKNOWN for c in comps):
                comps.append(t)
    total = len(comps) ** n
    if total > budget:
        raise BudgetExceeded(f"{total} morphisms {m}->{n} exceed budget {budget}")
    for tup in _cartesian(comps, repeat=n):
        yield Morphism(m, n, tup)
