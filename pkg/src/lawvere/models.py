"""Finite models of presentations.

Models are found by a backtracking search over operation-table cells in which
every equation instance is re-examined as soon as the cell blocking its
evaluation gets a value. Homomorphisms are found by a search that assigns
generators freely and propagates every value forced by an operation.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import permutations, product as _cartesian
from math import factorial
from typing import Callable, Iterable, Optional, Sequence

from . import finset as fs
from . import spancat as sc
from .errors import BudgetExceeded, CompositionMismatch, ConfigurationError, StructureError
from .finset import DEFAULT_BUDGET, FinMap, FinSet
from .theory import (App, Morphism, Presentation, Term, Var, compose_morphisms, get_normalizer,
                     hom_iter, morphism_keys, substitute)


def _index(args: Sequence[int], n: int) -> int:
    i = 0
    for a in args:
        i = i * n + a
    return i


def _unindex(i: int, n: int, k: int) -> tuple:
    out = []
    for _ in range(k):
        i, r = divmod(i, n)
        out.append(r)
    return tuple(reversed(out))


# ---------------------------------------------------------------------------
# Models

@dataclass(frozen=True)
class Model:
    """Operation tables on ``0..size-1``, one per symbol in ``presentation.ops``.

    Tables are flattened row-major with lexicographic argument order. ``None``
    entries mark results outside a truncated carrier (see :func:`free_model`).
    """

    presentation: Presentation
    size: int
    tables: tuple
    labels: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        tables = tuple(tuple(t) for t in self.tables)
        object.__setattr__(self, "tables", tables)
        if len(tables) != len(self.presentation.ops):
            raise ConfigurationError("one table per operation symbol is required")
        for o, t in zip(self.presentation.ops, tables):
            if len(t) != self.size ** o.arity:
                raise ConfigurationError(f"table for {o.name} has {len(t)} cells, "
                                         f"expected {self.size ** o.arity}")
            for v in t:
                if v is not None and not 0 <= v < self.size:
                    raise ConfigurationError(f"table for {o.name} leaves the carrier")

    @property
    def carrier(self) -> FinSet:
        return FinSet(self.size)

    @property
    def is_total(self) -> bool:
        return all(v is not None for t in self.tables for v in t)

    def op_index(self, name: str) -> int:
        for i, o in enumerate(self.presentation.ops):
            if o.name == name:
                return i
        raise KeyError(name)

    def table(self, name: str) -> tuple:
        return self.tables[self.op_index(name)]

    def apply(self, op, args: Sequence[int]) -> Optional[int]:
        k = op if isinstance(op, int) else self.op_index(op)
        return self.tables[k][_index(args, self.size)]

    def evaluate(self, t: Term, env: Sequence[int]) -> Optional[int]:
        if isinstance(t, Var):
            return env[t.index]
        vals = []
        for a in t.args:
            v = self.evaluate(a, env)
            if v is None:
                return None
            vals.append(v)
        return self.apply(t.op, vals)

    def key(self) -> tuple:
        return self.tables

    def relabel(self, perm: Sequence[int]) -> "Model":
        """Transport the structure along the bijection ``x -> perm[x]``."""
        n = self.size
        new_tables = []
        for o, t in zip(self.presentation.ops, self.tables):
            new = [None] * len(t)
            for i, v in enumerate(t):
                args = _unindex(i, n, o.arity)
                new[_index([perm[a] for a in args], n)] = None if v is None else perm[v]
            new_tables.append(tuple(new))
        return Model(self.presentation, n, tuple(new_tables))

    def to_dict(self) -> dict:
        return {"carrier": self.size,
                "tables": {o.name: list(t) for o, t in zip(self.presentation.ops, self.tables)}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, p: Presentation, d: dict) -> "Model":
        return cls(p, d["carrier"], tuple(tuple(d["tables"][o.name]) for o in p.ops))

    @classmethod
    def from_json(cls, p: Presentation, text: str) -> "Model":
        return cls.from_dict(p, json.loads(text))


def make_model(p: Presentation, size: int, tables: dict) -> Model:
    """Build a model from ``{name: table}`` where a table is a flat list or nested lists."""
    flat = []
    for o in p.ops:
        t = tables[o.name]
        t = list(t) if isinstance(t, (list, tuple)) else [t]
        while t and isinstance(t[0], (list, tuple)):
            t = [v for row in t for v in row]
        flat.append(tuple(t))
    return Model(p, size, tuple(tuple(t) for t in flat))


def equation_violation(m: Model) -> Optional[tuple]:
    """First ``(equation, assignment)`` where the equation fails, or ``None``."""
    for eq in m.presentation.eqs:
        for env in _cartesian(range(m.size), repeat=eq.context_size):
            lhs, rhs = m.evaluate(eq.lhs, env), m.evaluate(eq.rhs, env)
            if lhs is None or rhs is None:
                continue
            if lhs != rhs:
                return eq, env
    return None


def check_model(candidate: Model) -> bool:
    """Does every equation hold under every assignment (where defined)?"""
    return equation_violation(candidate) is None


# ---------------------------------------------------------------------------
# Model search

def _compile(t: Term, offsets: dict, arities: dict, n: int):
    if isinstance(t, Var):
        return t.index
    return (offsets[t.op], arities[t.op], tuple(_compile(a, offsets, arities, n) for a in t.args))


def search_models(p: Presentation, size: int, budget: int = 10 * DEFAULT_BUDGET) -> list[Model]:
    """All labeled models on ``0..size-1``, in lexicographic table order."""
    n = size
    offsets, arities, cells = {}, {}, []
    for o in p.ops:
        offsets[o.name] = len(cells)
        arities[o.name] = o.arity
        cells.extend((o.name, args) for args in _cartesian(range(n), repeat=o.arity))
    ncells = len(cells)
    # nullary cells first, then by the largest argument ("least number" order)
    order = sorted(range(ncells), key=lambda c: (max(cells[c][1], default=-1), c))
    values = [-1] * ncells

    def ev(t, env):
        if isinstance(t, int):
            return env[t]
        off, k, sub = t
        idx = 0
        for s in sub:
            v = ev(s, env)
            if v < 0:
                return v
            idx = idx * n + v
        cell = off + idx
        v = values[cell]
        return v if v >= 0 else -(cell + 1)

    instances = []
    for eq in p.eqs:
        lhs, rhs = _compile(eq.lhs, offsets, arities, n), _compile(eq.rhs, offsets, arities, n)
        for env in _cartesian(range(n), repeat=eq.context_size):
            instances.append((lhs, rhs, env))

    watches: list[list[int]] = [[] for _ in range(ncells)]

    def examine(i):
        """0 = satisfied, -1 = violated, otherwise (cell + 1) that blocks it."""
        lhs, rhs, env = instances[i]
        a = ev(lhs, env)
        if a < 0:
            return -a
        b = ev(rhs, env)
        if b < 0:
            return -b
        return 0 if a == b else -1

    for i in range(len(instances)):
        r = examine(i)
        if r == -1:
            return []
        if r > 0:
            watches[r - 1].append(i)

    found: list[Model] = []
    nodes = 0

    def assign(cell, v):
        """Set a cell and re-examine its watchers; return an undo record or None."""
        values[cell] = v
        pending = watches[cell]
        watches[cell] = []
        moved = []
        for i in pending:
            r = examine(i)
            if r == -1:
                for c in reversed(moved):
                    watches[c].pop()
                watches[cell] = pending
                values[cell] = -1
                return None
            if r > 0:
                watches[r - 1].append(i)
                moved.append(r - 1)
        return pending, moved

    def undo(cell, record):
        pending, moved = record
        for c in reversed(moved):
            watches[c].pop()
        watches[cell] = pending
        values[cell] = -1

    def rec(depth):
        nonlocal nodes
        if depth == ncells:
            found.append(_model_from_cells(p, n, values, offsets))
            return
        cell = order[depth]
        for v in range(n):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"model search on {size} elements exceeded {budget} nodes")
            record = assign(cell, v)
            if record is None:
                continue
            rec(depth + 1)
            undo(cell, record)

    rec(0)
    found.sort(key=Model.key)
    return found


def _model_from_cells(p, n, values, offsets):
    tables = []
    for o in p.ops:
        off = offsets[o.name]
        tables.append(tuple(values[off:off + n ** o.arity]))
    return Model(p, n, tuple(tables))


def canonical_form(m: Model) -> Model:
    """The lexicographically least relabeling of ``m``."""
    return min((m.relabel(perm) for perm in permutations(range(m.size))), key=Model.key)


def automorphism_count(m: Model) -> int:
    return sum(1 for perm in permutations(range(m.size)) if m.relabel(perm) == m)


def enumerate_models(p: Presentation, size: int, up_to_iso: bool = True,
                     budget: int = 10 * DEFAULT_BUDGET) -> list[Model]:
    """Models on a carrier of ``size`` elements.

    With ``up_to_iso`` each isomorphism class is represented by its canonical
    (least) relabeling; the list is sorted by table serialization.
    """
    labeled = search_models(p, size, budget)
    if not up_to_iso:
        return labeled
    return sorted({canonical_form(m) for m in labeled}, key=Model.key)


def orbit_recount(p: Presentation, size: int) -> int:
    """Number of iso classes via sum of ``|Aut|/size!`` over labeled models."""
    labeled = search_models(p, size)
    total = sum(automorphism_count(m) for m in labeled)
    q, r = divmod(total, factorial(size))
    if r:
        raise StructureError("labeled models do not split into whole orbits", total)
    return q


# ---------------------------------------------------------------------------
# Homomorphisms

@dataclass(frozen=True)
class ModelHom:
    source: Model
    target: Model
    map: FinMap

    def __call__(self, x: int) -> int:
        return self.map(x)


def is_homomorphism(table: Sequence[int], a: Model, b: Model) -> bool:
    """Does the map commute with every operation wherever ``a`` defines it?"""
    for k, o in enumerate(a.presentation.ops):
        for args in _cartesian(range(a.size), repeat=o.arity):
            r = a.apply(k, args)
            if r is None:
                continue
            if b.apply(k, [table[x] for x in args]) != table[r]:
                return False
    return True


def _search_plan(a: Model):
    """Assignment order for the elements of ``a``, with forcing instances.

    Elements that are the value of an operation on already-placed elements
    are placed next (their image is forced); otherwise the least unplaced
    element is placed as a free choice.
    """
    inst = []
    for k, o in enumerate(a.presentation.ops):
        for args in _cartesian(range(a.size), repeat=o.arity):
            r = a.apply(k, args)
            if r is not None:
                inst.append((k, args, r))
    placed, order, forcer = set(), [], []
    while len(order) < a.size:
        hit = next(((k, args, r) for k, args, r in inst
                    if r not in placed and all(x in placed for x in args)), None)
        if hit is not None:
            e = hit[2]
            forcer.append((hit[0], hit[1]))
        else:
            e = min(set(range(a.size)) - placed)
            forcer.append(None)
        order.append(e)
        placed.add(e)
    pos = {e: i for i, e in enumerate(order)}
    buckets: list[list] = [[] for _ in order]
    for k, args, r in inst:
        buckets[max([pos[r]] + [pos[x] for x in args])].append((k, args, r))
    return order, forcer, buckets


def search_homs(a: Model, b: Model, budget: int = 10 * DEFAULT_BUDGET) -> list[tuple]:
    """Tables of every structure-preserving map ``a -> b``, lexicographically."""
    if a.presentation.ops != b.presentation.ops:
        raise ConfigurationError("homomorphisms need models of the same signature")
    order, forcer, buckets = _search_plan(a)
    h = [None] * a.size
    out = []
    nodes = 0

    def rec(k):
        nonlocal nodes
        if k == len(order):
            out.append(tuple(h))
            return
        e = order[k]
        f = forcer[k]
        if f is not None:
            v = b.apply(f[0], [h[x] for x in f[1]])
            cands = () if v is None else (v,)
        else:
            cands = range(b.size)
        for v in cands:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"homomorphism search exceeded {budget} nodes")
            h[e] = v
            if all(b.apply(op, [h[x] for x in args]) == h[r] for op, args, r in buckets[k]):
                rec(k + 1)
        h[e] = None

    rec(0)
    out.sort()
    return out


def model_homs(a: Model, b: Model, budget: int = 10 * DEFAULT_BUDGET) -> list[ModelHom]:
    return [ModelHom(a, b, FinMap(a.carrier, b.carrier, t)) for t in search_homs(a, b, budget)]


def brute_force_homs(a: Model, b: Model, budget: int = DEFAULT_BUDGET) -> list[tuple]:
    """Reference enumeration: filter every map ``a -> b``."""
    return [f.table for f in fs.enumerate_maps(a.carrier, b.carrier, budget)
            if is_homomorphism(f.table, a, b)]


# ---------------------------------------------------------------------------
# Free models

class FreeModel(Model):
    """Truncated free model; elements are normal forms up to a degree bound.

    Results of operations that leave the truncation are ``None``; every check
    that uses a free model only constrains cells inside the carrier.
    """

    def __init__(self, p: Presentation, generators: int, bound: int):
        nz = get_normalizer(p)
        keys = tuple(nz.keys_by_degree(generators, bound))
        object.__setattr__(self, "presentation", p)
        object.__setattr__(self, "size", len(keys))
        object.__setattr__(self, "labels", keys)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "_nz", nz)
        object.__setattr__(self, "_pos", {k: i for i, k in enumerate(keys)})
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "_tables", None)

    @property
    def tables(self):
        if self._tables is None:
            out = []
            for k, o in enumerate(self.presentation.ops):
                out.append(tuple(self.apply(k, args)
                                 for args in _cartesian(range(self.size), repeat=o.arity)))
            object.__setattr__(self, "_tables", tuple(out))
        return self._tables

    def apply(self, op, args):
        k = op if isinstance(op, int) else self.op_index(op)
        key = (k, tuple(args))
        hit = self._cache.get(key, -1)
        if hit != -1:
            return hit
        o = self.presentation.ops[k]
        res = self._nz.apply(o.name, tuple(self.labels[x] for x in args), self.generators)
        v = self._pos.get(res)
        self._cache[key] = v
        return v

    def element(self, key) -> int:
        return self._pos[key]

    def generator(self, i: int) -> int:
        return self._pos[self._nz.var(i, self.generators)]

    def __eq__(self, other):
        return Model.__eq__(self, other)

    def __hash__(self):
        return hash((self.size, self.tables))

    def __repr__(self):
        return f"FreeModel({self.presentation.name}, {self.generators}, {self.bound})"


def free_model(p: Presentation, generators: int, bound: int) -> FreeModel:
    """Free model on ``generators`` truncated to normal forms of degree <= ``bound``."""
    return FreeModel(p, generators, bound)


# ---------------------------------------------------------------------------
# Yoneda reconstruction

def yoneda_report(p: Presentation, m: int, n: int, bound: int, samples: int = 50,
                  seed: int = 0) -> dict:
    """Compare homs between truncated free models with the syntactic hom-set.

    Homomorphisms ``F(m) -> F(n)`` are enumerated by search, without using
    freeness. Each is read off as the tuple of images of the generators, a
    morphism ``n -> m`` of the syntactic category. The check asserts that
    this reading is injective, that the homs whose generator images lie in
    the bound match ``hom_iter(p, n, m, bound)`` exactly, and that composing
    homs matches composing morphisms in the reverse order.
    """
    nz = get_normalizer(p)
    bounded = {a: set(nz.keys_by_entry(a, bound)) for a in (m, n)}
    reach = max((nz.degree(k) for a in (m, n) for k in bounded[a]), default=0)
    src_deg = max(reach, 1)
    tgt_deg = src_deg * reach
    src = {a: free_model(p, a, src_deg) for a in (m, n)}
    tgt = {a: free_model(p, a, tgt_deg) for a in (m, n)}

    def read(hom, a, b):
        return tuple(tgt[b].labels[hom[src[a].generator(i)]] for i in range(a))

    report = {"theory": p.name, "m": m, "n": n, "bound": bound, "ok": True}
    homs = {}
    for a, b in ((m, n), (n, m)):
        all_homs = search_homs(src[a], tgt[b])
        readings = [read(h, a, b) for h in all_homs]
        if len(set(readings)) != len(readings):
            report["ok"] = False
            report["failure"] = f"two homs F({a}) -> F({b}) agree on generators"
            return report
        inside = {r: h for r, h in zip(readings, all_homs) if all(k in bounded[b] for k in r)}
        syntactic = {morphism_keys(f, p) for f in hom_iter(p, b, a, bound)}
        if set(inside) != syntactic:
            report["ok"] = False
            report["failure"] = f"homs F({a}) -> F({b}) do not match hom({b}, {a})"
            return report
        homs[(a, b)] = inside
        if (a, b) == (m, n):
            report["homs"] = len(inside)
            report["syntactic"] = len(syntactic)

    rng = random.Random(seed)
    first = sorted(homs[(m, n)].items())
    second = sorted(homs[(n, m)].items())
    checked = 0
    if first and second:
        for _ in range(samples):
            (f_keys, h1), (g_keys, h2) = rng.choice(first), rng.choice(second)
            # generator images of h1 have degree <= reach <= src_deg, so h2 is defined on them
            composite = tuple(tgt[m].labels[h2[src[n].element(k)]] for k in f_keys)
            f = Morphism(n, m, [nz.reify(k) for k in f_keys])
            g = Morphism(m, n, [nz.reify(k) for k in g_keys])
            if morphism_keys(compose_morphisms(g, f, p), p) != composite:
                report["ok"] = False
                report["failure"] = f"composition mismatch for {f} and {g}"
                return report
            checked += 1
    report["composition_pairs"] = checked
    return report


def yoneda_check(p: Presentation, m: int, n: int, bound: int, samples: int = 50,
                 seed: int = 0) -> bool:
    return yoneda_report(p, m, n, bound, samples, seed)["ok"]


# ---------------------------------------------------------------------------
# Product-preserving functors out of the syntactic category

@dataclass
class FunctorData:
    """A functor on the syntactic category, given on objects ``0..max_arity``.

    ``projections[k]`` are the images of the ``k`` product projections
    ``k -> 1``; ``operations[name]`` is the image of the generating morphism
    ``arity -> 1``.
    """

    presentation: Presentation
    objects: dict
    projections: dict
    operations: dict

    @property
    def max_arity(self) -> int:
        return max(self.objects)

    def comparison(self, k: int) -> dict:
        """Map ``F(k) -> F(1)^k`` through the projections, as a dict."""
        return {x: tuple(p(x) for p in self.projections[k]) for x in self.objects[k]}

    def evaluate(self, f: Morphism) -> FinMap:
        """Image of a morphism, built from the generators and product structure."""
        src = self.comparison(f.source)
        back = {v: x for x, v in self.comparison(f.target).items()}
        table = []
        for x in self.objects[f.source]:
            coords = src[x]
            out = tuple(self._term(t, coords) for t in f.components)
            if out not in back:
                raise StructureError("comparison map is not surjective", out)
            table.append(back[out])
        return FinMap(self.objects[f.source], self.objects[f.target], table)

    def _term(self, t, coords):
        if isinstance(t, Var):
            return coords[t.index]
        vals = tuple(self._term(a, coords) for a in t.args)
        k = len(vals)
        back = {v: x for x, v in self.comparison(k).items()}
        return self.operations[t.op](back[vals])


def functor_violation(p: Presentation, f: FunctorData, sizes: int, bound: int = 1,
                      max_pairs: int = 2000, seed: int = 0) -> Optional[str]:
    """Describe the first failure of functoriality or product preservation."""
    for k in range(sizes + 1):
        if k not in f.objects or k not in f.projections or len(f.projections[k]) != k:
            return f"object {k} or its projections are missing"
        cmp = f.comparison(k)
        if len(set(cmp.values())) != len(cmp) or len(cmp) != f.objects[1].size ** k:
            return f"F({k}) -> F(1)^{k} is not a bijection"
    if f.projections[1][0].table != tuple(range(f.objects[1].size)):
        return "the projection 1 -> 1 is not the identity"
    for o in p.ops:
        if o.arity > sizes:
            return f"operation {o.name} has arity above {sizes}"
    for k in range(sizes + 1):
        if f.evaluate(Morphism(k, k, [Var(i) for i in range(k)])) != fs.identity(f.objects[k]):
            return f"F(id_{k}) is not the identity"
    for eq in p.eqs:
        if eq.context_size > sizes:
            continue
        lhs = f.evaluate(Morphism(eq.context_size, 1, [eq.lhs]))
        rhs = f.evaluate(Morphism(eq.context_size, 1, [eq.rhs]))
        if lhs != rhs:
            return f"equation {eq} fails"
    if p.normalizer is not None:
        homs = {(a, b): list(hom_iter(p, a, b, bound))
                for a in range(sizes + 1) for b in range(sizes + 1)}
        pairs = [(g1, g2) for a in range(sizes + 1) for b in range(sizes + 1)
                 for c in range(sizes + 1) for g1 in homs[(a, b)] for g2 in homs[(b, c)]]
        if len(pairs) > max_pairs:
            pairs = random.Random(seed).sample(pairs, max_pairs)
        for g1, g2 in pairs:
            lhs = f.evaluate(compose_morphisms(g1, g2, p))
            rhs = fs.compose_maps(f.evaluate(g1), f.evaluate(g2))
            if lhs != rhs:
                return f"F({g2} . {g1}) != F({g2}) . F({g1})"
    return None


def functor_check(p: Presentation, f: FunctorData, sizes: int, bound: int = 1) -> bool:
    """Is ``f`` a product-preserving functor on objects ``0..sizes``?"""
    try:
        return functor_violation(p, f, sizes, bound) is None
    except (StructureError, KeyError):
        return False


def model_functor(m: Model, sizes: int = 2) -> FunctorData:
    """Underlying-set functor of a model: ``k -> carrier^k``."""
    p = m.presentation
    top = max([sizes] + [o.arity for o in p.ops])
    n = m.size
    objects = {k: FinSet(n ** k) for k in range(top + 1)}
    projections = {k: tuple(FinMap(objects[k], objects[1],
                                   [_unindex(x, n, k)[i] for x in range(n ** k)])
                            for i in range(k))
                   for k in range(top + 1)}
    operations = {o.name: FinMap(objects[o.arity], objects[1], m.tables[i])
                  for i, o in enumerate(p.ops)}
    return FunctorData(p, objects, projections, operations)


def natural_transformations(p: Presentation, f: FunctorData, g: FunctorData, sizes: int,
                            bound: int = 1) -> list[dict]:
    """Every natural family ``F(k) -> G(k)`` for ``k <= sizes``.

    The component at 1 ranges over all maps; higher components are searched
    pointwise among the elements compatible with the projections, and every
    candidate family is then checked against all morphisms up to ``bound``.
    """
    out = []
    homs = [h for a in range(sizes + 1) for b in range(sizes + 1) for h in hom_iter(p, a, b, bound)]
    f_cmp = {k: f.comparison(k) for k in range(sizes + 1)}
    g_cmp = {k: g.comparison(k) for k in range(sizes + 1)}
    for alpha1 in fs.enumerate_maps(f.objects[1], g.objects[1]):
        choices = {}
        for k in range(sizes + 1):
            per_point = []
            for x in f.objects[k]:
                want = tuple(alpha1(c) for c in f_cmp[k][x])
                per_point.append([y for y in g.objects[k] if g_cmp[k][y] == want])
            choices[k] = per_point
        for combo in _cartesian(*(_cartesian(*choices[k]) for k in range(sizes + 1))):
            alpha = {k: FinMap(f.objects[k], g.objects[k], combo[k]) for k in range(sizes + 1)}
            if all(fs.compose_maps(f.evaluate(h), alpha[h.target]) ==
                   fs.compose_maps(alpha[h.source], g.evaluate(h)) for h in homs):
                out.append(alpha)
    return out


def trivial_theory_equivalence(max_size: int = 3, sizes: int = 2, seed: int = 0) -> dict:
    """Evaluation at 1 from product-preserving functors to finite sets.

    Checks that each set ``S`` gives a functor ``k -> S^k`` passing
    :func:`functor_check`; that any relabeled product-preserving functor is
    naturally isomorphic to the one built from its value at 1; and that
    natural transformations ``F_S -> F_T`` correspond exactly to maps
    ``S -> T`` via their component at 1.
    """
    from .theory import trivial_theory
    p = trivial_theory()
    rng = random.Random(seed)
    report = {"sets": [], "ok": True}
    functors = {}
    for s in range(max_size + 1):
        F = model_functor(Model(p, s, ()), sizes)
        functors[s] = F
        ok = functor_check(p, F, sizes)
        # a relabeled copy must still be a functor, isomorphic to F via its comparison maps
        G = _relabel_functor(F, rng)
        ok_g = functor_check(p, G, sizes)
        iso = natural_transformations(p, G, F, sizes)
        iso_ok = any(all(alpha[k].is_bijective() for k in alpha) for alpha in iso)
        report["sets"].append({"size": s, "functor": ok, "relabeled_functor": ok_g,
                               "iso_to_canonical": iso_ok})
        report["ok"] &= ok and ok_g and iso_ok
    full = []
    for s in range(max_size + 1):
        for t in range(max_size + 1):
            nats = natural_transformations(p, functors[s], functors[t], sizes)
            at_one = {alpha[1].table for alpha in nats}
            faithful = len(at_one) == len(nats) == t ** s
            full.append({"source": s, "target": t, "nat": len(nats), "maps": t ** s,
                         "ok": faithful})
            report["ok"] &= faithful
    report["fully_faithful"] = full
    return report


def _relabel_functor(F: FunctorData, rng: random.Random) -> FunctorData:
    """Transport ``F`` along random bijections of each ``F(k)``."""
    perms = {}
    for k, obj in F.objects.items():
        perm = list(range(obj.size))
        if k != 1:
            rng.shuffle(perm)
        perms[k] = perm
    inv = {k: {v: i for i, v in enumerate(perm)} for k, perm in perms.items()}
    projections = {k: tuple(FinMap(F.objects[k], F.objects[1],
                                   [perms[1][p(inv[k][x])] for x in range(F.objects[k].size)])
                            for p in ps)
                   for k, ps in F.projections.items()}
    operations = {}
    for name, op in F.operations.items():
        k = F.presentation.op(name).arity
        operations[name] = FinMap(F.objects[k], F.objects[1],
                                  [perms[1][op(inv[k][x])] for x in range(op.dom.size)])
    return FunctorData(F.presentation, dict(F.objects), projections, operations)


# ---------------------------------------------------------------------------
# Commutative monoids as product-preserving functors on span classes

class SpanFunctor:
    """A functor from span classes to finite sets, object ``k`` sent to ``F(1)^k``.

    ``action`` maps a :class:`SpanClass` to a :class:`FinMap`; it is called
    lazily and memoised.
    """

    def __init__(self, carrier: int, action: Callable[[sc.SpanClass], FinMap]):
        self.carrier = carrier
        self._action = action
        self._memo: dict = {}

    def obj(self, k: int) -> FinSet:
        return FinSet(self.carrier ** k)

    def __call__(self, a: sc.SpanClass) -> FinMap:
        hit = self._memo.get(a)
        if hit is None:
            hit = self._action(a)
            self._memo[a] = hit
        return hit


def _natural_multiple(m: Model, k: int, x: int) -> int:
    out = m.apply("e", ())
    for _ in range(k):
        out = m.apply("m", (x, out))
    return out


def cmon_to_spanfunctor(m: Model) -> SpanFunctor:
    """Send the class ``A: a -> b`` to ``x -> (sum_j A[i][j] x_j)_i`` on ``M^a -> M^b``."""
    n = m.size
    unit = m.apply("e", ())

    def action(a: sc.SpanClass) -> FinMap:
        table = []
        for x in range(n ** a.source):
            xs = _unindex(x, n, a.source)
            ys = []
            for i in range(a.target):
                acc = unit
                for j in range(a.source):
                    acc = m.apply("m", (acc, _natural_multiple(m, a.rows[i][j], xs[j])))
                ys.append(acc)
            table.append(_index(ys, n))
        return FinMap(FinSet(n ** a.source), FinSet(n ** a.target), table)

    return SpanFunctor(n, action)


def span_functor_violation(F: SpanFunctor, max_obj: int = 2, max_entry: int = 2):
    """First failure of identities, products or composition, with its witness."""
    for k in range(max_obj + 1):
        if F(sc.identity_class(k)) != fs.identity(F.obj(k)):
            return "identity", (sc.identity_class(k),)
        projs = [F(sc.SpanClass(k, 1, [[int(j == i) for j in range(k)]])) for i in range(k)]
        images = {tuple(p(x) for p in projs) for x in range(F.obj(k).size)}
        if len(images) != F.carrier ** k or F.obj(k).size != F.carrier ** k:
            return "product", (k,)
    classes = {(a, b): list(sc.enumerate_classes(a, b, max_entry))
               for a in range(max_obj + 1) for b in range(max_obj + 1)}
    for a in range(max_obj + 1):
        for b in range(max_obj + 1):
            for c in range(max_obj + 1):
                for s in classes[(a, b)]:
                    fs_ = F(s)
                    for t in classes[(b, c)]:
                        if F(sc.compose_classes(s, t)) != fs.compose_maps(fs_, F(t)):
                            return "composition", (s, t)
    return None


def span_functor_check(F: SpanFunctor, max_obj: int = 2, max_entry: int = 2) -> bool:
    return span_functor_violation(F, max_obj, max_entry) is None


def spanfunctor_to_cmon(F: SpanFunctor, max_obj: int = 2, max_entry: int = 2) -> Model:
    """Read a commutative monoid off the generating spans ``0 <- 0 -> 1`` and ``2 <- 2 -> 1``.

    The functor is first verified on all classes between objects up to
    ``max_obj`` with entries up to ``max_entry``; a failure raises
    :class:`StructureError` carrying the offending classes.
    """
    from .theory import cmon_theory
    bad = span_functor_violation(F, max_obj, max_entry)
    if bad is not None:
        raise StructureError(f"not a product-preserving functor ({bad[0]})", bad[1])
    n = F.carrier
    unit_map = F(sc.SpanClass(0, 1, [[]]))
    mult = F(sc.SpanClass(2, 1, [[1, 1]]))
    # F(2) -> F(1)^2 through the projection classes
    p0 = F(sc.SpanClass(2, 1, [[1, 0]]))
    p1 = F(sc.SpanClass(2, 1, [[0, 1]]))
    back = {(p0(x), p1(x)): x for x in range(n * n)}
    table = [mult(back[(u, v)]) for u in range(n) for v in range(n)]
    model = Model(cmon_theory(), n, ((unit_map(0),), tuple(table)))
    if not check_model(model):
        raise StructureError("extracted structure is not a commutative monoid", model.to_dict())
    return model
