"""Spans of finite sets modulo isomorphism of the middle.

A span ``X <- T -> Y`` is recorded up to isomorphism over ``X x Y`` by its
fiber-count matrix: entry ``(y, x)`` counts the middle elements lying over
``(x, y)``. Composition is by pullback and corresponds to matrix
multiplication. Convention used everywhere: ``compose_spans(s, t)`` applies
``s`` first and its class is ``M(t) @ M(s)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterator

from . import finset as fs
from .errors import CompositionMismatch, LawvereError
from .finset import FinMap, FinSet


@dataclass(frozen=True)
class Span:
    left: FinMap
    right: FinMap

    def __post_init__(self):
        if self.left.dom.size != self.right.dom.size:
            raise LawvereError("span legs must share their middle")

    @property
    def middle(self) -> FinSet:
        return self.left.dom

    @property
    def source(self) -> FinSet:
        return self.left.cod

    @property
    def target(self) -> FinSet:
        return self.right.cod


@dataclass(frozen=True)
class SpanClass:
    """Isomorphism class of a span ``source -> target`` as a target x source matrix."""

    source: int
    target: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.target or any(len(r) != self.source for r in rows):
            raise LawvereError(f"matrix shape does not match {self.target}x{self.source}")
        if any(v < 0 for r in rows for v in r):
            raise LawvereError("span class entries must be non-negative")

    @classmethod
    def from_rows(cls, rows, source: int | None = None) -> "SpanClass":
        rows = [list(r) for r in rows]
        if source is None:
            if not rows:
                raise LawvereError("source size is ambiguous for a matrix with no rows")
            source = len(rows[0])
        return cls(source, len(rows), rows)

    def __getitem__(self, idx):
        y, x = idx
        return self.rows[y][x]

    @property
    def total(self) -> int:
        return sum(map(sum, self.rows))

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text: str, source: int | None = None) -> "SpanClass":
        return cls.from_rows(json.loads(text), source)

    def __repr__(self):
        return f"SpanClass({self.source}->{self.target}, {self.to_list()})"


def matmul(b: SpanClass, a: SpanClass) -> SpanClass:
    """Matrix product ``b @ a``, i.e. the class of "a then b"."""
    if a.target != b.source:
        raise CompositionMismatch(f"cannot compose {a!r} then {b!r}")
    rows = [[sum(b.rows[z][y] * a.rows[y][x] for y in range(a.target)) for x in range(a.source)]
            for z in range(b.target)]
    return SpanClass(a.source, b.target, rows)


def compose_classes(a: SpanClass, b: SpanClass) -> SpanClass:
    return matmul(b, a)


def add_classes(a: SpanClass, b: SpanClass) -> SpanClass:
    if (a.source, a.target) != (b.source, b.target):
        raise CompositionMismatch("span classes must share endpoints to be added")
    return SpanClass(a.source, a.target,
                     [[u + v for u, v in zip(ra, rb)] for ra, rb in zip(a.rows, b.rows)])


def block_diag(a: SpanClass, b: SpanClass) -> SpanClass:
    rows = [list(r) + [0] * b.source for r in a.rows] + [[0] * a.source + list(r) for r in b.rows]
    return SpanClass(a.source + b.source, a.target + b.target, rows)


def identity_class(n: int) -> SpanClass:
    return SpanClass(n, n, [[int(i == j) for j in range(n)] for i in range(n)])


def zero_class(x: int, y: int) -> SpanClass:
    return SpanClass(x, y, [[0] * x for _ in range(y)])


def identity_span(x: FinSet) -> Span:
    return Span(fs.identity(x), fs.identity(x))


def zero_span(x: FinSet, y: FinSet) -> Span:
    return Span(fs.initial_map(x), fs.initial_map(y))


def compose_spans(s: Span, t: Span) -> Span:
    """``s: X -> Y`` followed by ``t: Y -> Z``; the middle is a pullback."""
    if s.target.size != t.source.size:
        raise CompositionMismatch(f"span targets {s.target!r} but next span starts at {t.source!r}")
    _, p1, p2 = fs.pullback(s.right, t.left)
    return Span(fs.compose_maps(p1, s.left), fs.compose_maps(p2, t.right))


def add_spans(s: Span, t: Span) -> Span:
    if s.source.size != t.source.size or s.target.size != t.target.size:
        raise CompositionMismatch("spans must share endpoints to be added")
    return Span(fs.copair(s.left, t.left), fs.copair(s.right, t.right))


def tensor_spans(s: Span, t: Span) -> Span:
    return Span(fs.map_sum(s.left, t.left), fs.map_sum(s.right, t.right))


def span_matrix(s: Span) -> SpanClass:
    rows = [[0] * s.source.size for _ in range(s.target.size)]
    for x, y in zip(s.left.table, s.right.table):
        rows[y][x] += 1
    return SpanClass(s.source.size, s.target.size, rows)


def matrix_span(m: SpanClass) -> Span:
    """Canonical representative; middle ordered by (column, row, copy)."""
    left, right = [], []
    for x in range(m.source):
        for y in range(m.target):
            left.extend([x] * m.rows[y][x])
            right.extend([y] * m.rows[y][x])
    t = FinSet(len(left))
    return Span(FinMap(t, FinSet(m.source), left), FinMap(t, FinSet(m.target), right))


def span_from_legs(left, right, source: int, target: int) -> Span:
    t = FinSet(len(left))
    return Span(FinMap(t, FinSet(source), left), FinMap(t, FinSet(target), right))


# Structure maps of the biproduct X ⊔ Y.

def injection(x: int, y: int, which: int) -> SpanClass:
    """Coproduct injection of the ``which``-th summand into ``x ⊔ y``."""
    n = x + y
    off, k = (0, x) if which == 0 else (x, y)
    return SpanClass(k, n, [[int(i == off + j) for j in range(k)] for i in range(n)])


def projection(x: int, y: int, which: int) -> SpanClass:
    """Product projection of ``x ⊔ y`` onto its ``which``-th factor."""
    n = x + y
    off, k = (0, x) if which == 0 else (x, y)
    return SpanClass(n, k, [[int(j == off + i) for j in range(n)] for i in range(k)])


def enumerate_classes(x: int, y: int, max_entry: int) -> Iterator[SpanClass]:
    """Every class ``x -> y`` with entries in ``0..max_entry``, lexicographically."""
    for flat in _cartesian(range(max_entry + 1), repeat=x * y):
        yield SpanClass(x, y, [flat[r * x:(r + 1) * x] for r in range(y)])
