"""Canonical finite sets and total functions between them.

Elements of a finite set of size ``n`` are the integers ``0..n-1``. Every
construction below fixes a lexicographic element order so results are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Iterator, Optional, Sequence

from .errors import BudgetExceeded, CompositionMismatch, PullbackMismatch, StructureError

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class FinSet:
    size: int
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.size < 0:
            raise ValueError(f"negative size {self.size}")

    def __iter__(self):
        return iter(range(self.size))

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"|{self.size}|" if self.label is None else f"{self.label}|{self.size}|"


@dataclass(frozen=True)
class FinMap:
    dom: FinSet
    cod: FinSet
    table: tuple

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.dom.size:
            raise StructureError(f"table length {len(table)} != domain size {self.dom.size}")
        for v in table:
            if not 0 <= v < self.cod.size:
                raise StructureError(f"value {v} outside codomain {self.cod!r}")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __repr__(self):
        return f"FinMap({self.dom.size}->{self.cod.size}, {list(self.table)})"

    def fiber(self, y: int) -> list[int]:
        return [x for x, v in enumerate(self.table) if v == y]

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod.size

    def is_bijective(self) -> bool:
        return self.dom.size == self.cod.size and self.is_injective()

    def inverse(self) -> "FinMap":
        if not self.is_bijective():
            raise StructureError("map is not a bijection")
        inv = [0] * self.dom.size
        for x, y in enumerate(self.table):
            inv[y] = x
        return FinMap(self.cod, self.dom, inv)


def finset(n: int) -> FinSet:
    return FinSet(n)


def identity(a: FinSet) -> FinMap:
    return FinMap(a, a, range(a.size))


def constant(a: FinSet, b: FinSet, value: int) -> FinMap:
    return FinMap(a, b, [value] * a.size)


def terminal_map(a: FinSet) -> FinMap:
    return FinMap(a, FinSet(1), [0] * a.size)


def initial_map(b: FinSet) -> FinMap:
    return FinMap(FinSet(0), b, ())


def compose_maps(f: FinMap, g: FinMap) -> FinMap:
    """Diagrammatic composite: first ``f``, then ``g``."""
    if f.cod.size != g.dom.size:
        raise CompositionMismatch(f"cannot compose {f!r} with {g!r}")
    return FinMap(f.dom, g.cod, [g.table[v] for v in f.table])


def product(a: FinSet, b: FinSet) -> tuple[FinSet, FinMap, FinMap]:
    """Cartesian product; the pair (i, j) sits at index ``i * |b| + j``."""
    p = FinSet(a.size * b.size)
    n = b.size
    return p, FinMap(p, a, [k // n for k in range(p.size)]), FinMap(p, b, [k % n for k in range(p.size)])


def pair(f: FinMap, g: FinMap) -> FinMap:
    """The mediating map ``<f, g>`` into the product of the codomains."""
    if f.dom.size != g.dom.size:
        raise CompositionMismatch("pairing needs a common domain")
    n = g.cod.size
    return FinMap(f.dom, FinSet(f.cod.size * n), [x * n + y for x, y in zip(f.table, g.table)])


def coproduct(a: FinSet, b: FinSet) -> tuple[FinSet, FinMap, FinMap]:
    """Disjoint union with ``a`` as the first block."""
    s = FinSet(a.size + b.size)
    return s, FinMap(a, s, range(a.size)), FinMap(b, s, range(a.size, s.size))


def copair(f: FinMap, g: FinMap) -> FinMap:
    """The mediating map ``[f, g]`` out of the coproduct of the domains."""
    if f.cod.size != g.cod.size:
        raise CompositionMismatch("copairing needs a common codomain")
    return FinMap(FinSet(f.dom.size + g.dom.size), f.cod, f.table + g.table)


def map_sum(f: FinMap, g: FinMap) -> FinMap:
    """``f ⊔ g`` between disjoint unions."""
    shift = f.cod.size
    return FinMap(FinSet(f.dom.size + g.dom.size), FinSet(f.cod.size + g.cod.size),
                  f.table + tuple(v + shift for v in g.table))


def pullback(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap, FinMap]:
    """Pullback of the cospan ``f: A -> C <- B: g``.

    Elements are the pairs ``(a, b)`` with ``f(a) == g(b)`` in lexicographic
    order; the two projections are returned alongside.
    """
    if f.cod.size != g.cod.size:
        raise PullbackMismatch(f"codomains differ: {f.cod!r} vs {g.cod!r}")
    by_value: dict[int, list[int]] = {}
    for b, v in enumerate(g.table):
        by_value.setdefault(v, []).append(b)
    pairs = [(a, b) for a, v in enumerate(f.table) for b in by_value.get(v, ())]
    p = FinSet(len(pairs))
    return p, FinMap(p, f.dom, [a for a, _ in pairs]), FinMap(p, g.dom, [b for _, b in pairs])


def count_maps(a: FinSet, b: FinSet) -> int:
    return b.size ** a.size


def enumerate_maps(a: FinSet, b: FinSet, budget: int = DEFAULT_BUDGET) -> Iterator[FinMap]:
    """All maps ``a -> b`` in lexicographic table order."""
    total = count_maps(a, b)
    if total > budget:
        raise BudgetExceeded(f"{total} maps |{a.size}|->|{b.size}| exceeds budget {budget}")
    for table in _cartesian(range(b.size), repeat=a.size):
        yield FinMap(a, b, table)


def image_of(f: FinMap, xs: Sequence[int]) -> list[int]:
    return [f.table[x] for x in xs]
