"""Exact semirings and matrix categories over them.

``MatrixCategory(R)`` has the natural numbers as objects and ``n x m``
matrices as morphisms ``m -> n``; composition "f then g" is ``g @ f``,
mirroring the span convention in :mod:`lawvere.spancat`.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Any, Callable, Iterable, Optional, Sequence

from .errors import BudgetExceeded, CompositionMismatch, ConfigurationError, StructureError
from .finset import DEFAULT_BUDGET

INF = math.inf


@dataclass(frozen=True, eq=False)
class Semiring:
    """A semiring given by Python callables.

    ``elements`` lists the carrier when it is finite; infinite carriers give
    ``None`` and a finite ``sample`` used for axiom checks and random tests.
    """

    name: str
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    zero: Any
    one: Any
    elements: Optional[tuple] = None
    sample: tuple = ()
    neg: Optional[Callable[[Any], Any]] = None

    def __repr__(self):
        return f"Semiring({self.name})"

    def __eq__(self, other):
        return isinstance(other, Semiring) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    @property
    def finite(self) -> bool:
        return self.elements is not None

    def test_elements(self) -> tuple:
        return self.elements if self.finite else self.sample

    def sum(self, xs: Iterable):
        out = self.zero
        for x in xs:
            out = self.add(out, x)
        return out

    def random_element(self, rng: random.Random):
        return rng.choice(self.test_elements())

    def tables(self) -> dict:
        """Addition and multiplication tables indexed by carrier position."""
        if not self.finite:
            raise ConfigurationError(f"{self.name} is infinite")
        els = list(self.elements)
        idx = {e: i for i, e in enumerate(els)}
        return {
            "elements": els,
            "add": [[idx[self.add(a, b)] for b in els] for a in els],
            "mul": [[idx[self.mul(a, b)] for b in els] for a in els],
            "zero": idx[self.zero],
            "one": idx[self.one],
        }

    def to_json(self) -> str:
        data = {"name": self.name}
        if self.finite:
            data.update(self.tables())
        return json.dumps(data)


def table_semiring(name: str, add_table, mul_table, zero: int, one: int) -> Semiring:
    """Finite semiring on ``0..n-1`` given by operation tables (not checked)."""
    add_t = tuple(tuple(r) for r in add_table)
    mul_t = tuple(tuple(r) for r in mul_table)
    return Semiring(name, lambda a, b: add_t[a][b], lambda a, b: mul_t[a][b], zero, one,
                    tuple(range(len(add_t))))


NATURALS = Semiring("N", lambda a, b: a + b, lambda a, b: a * b, 0, 1, None, tuple(range(0, 8)))
INTEGERS = Semiring("Z", lambda a, b: a + b, lambda a, b: a * b, 0, 1, None,
                    tuple(range(-5, 6)), neg=lambda a: -a)
BOOLEAN = Semiring("B", lambda a, b: a | b, lambda a, b: a & b, 0, 1, (0, 1))


def _tropical_add(a, b):
    return min(a, b)


def _tropical_mul(a, b):
    return INF if a == INF or b == INF else a + b


TROPICAL = Semiring("T", _tropical_add, _tropical_mul, INF, 0, None, (INF, 0, 1, 2, 3, 5))


def zmod(k: int) -> Semiring:
    if k < 1:
        raise ConfigurationError("Z/k needs k >= 1")
    return Semiring(f"Z/{k}", lambda a, b: (a + b) % k, lambda a, b: (a * b) % k, 0, 1 % k,
                    tuple(range(k)), neg=lambda a: (-a) % k)


def semiring_by_name(name: str) -> Semiring:
    """Look up a built-in: ``N``, ``Z``, ``B``, ``T`` (min-plus) or ``Z/k``."""
    fixed = {"N": NATURALS, "Z": INTEGERS, "B": BOOLEAN, "T": TROPICAL,
             "nat": NATURALS, "int": INTEGERS, "bool": BOOLEAN, "tropical": TROPICAL}
    if name in fixed:
        return fixed[name]
    if name.startswith("Z/") and name[2:].isdigit():
        return zmod(int(name[2:]))
    raise ConfigurationError(f"unknown semiring {name!r}")


BUILTIN_SEMIRINGS = ("N", "Z", "B", "T", "Z/2", "Z/3", "Z/4")


def check_semiring(r: Semiring, elements: Optional[Sequence] = None) -> None:
    """Raise :class:`StructureError` with a witness if an axiom fails.

    Exhaustive over a finite carrier, otherwise over ``elements`` (default:
    the semiring's sample).
    """
    els = tuple(elements) if elements is not None else r.test_elements()
    add, mul, z, o = r.add, r.mul, r.zero, r.one
    for a in els:
        if add(z, a) != a or add(a, z) != a:
            raise StructureError("zero is not an additive unit", (a,))
        if mul(o, a) != a or mul(a, o) != a:
            raise StructureError("one is not a multiplicative unit", (a,))
        if mul(z, a) != z or mul(a, z) != z:
            raise StructureError("zero does not annihilate", (a,))
        for b in els:
            if add(a, b) != add(b, a):
                raise StructureError("addition is not commutative", (a, b))
            for c in els:
                if add(add(a, b), c) != add(a, add(b, c)):
                    raise StructureError("addition is not associative", (a, b, c))
                if mul(mul(a, b), c) != mul(a, mul(b, c)):
                    raise StructureError("multiplication is not associative", (a, b, c))
                if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
                    raise StructureError("left distributivity fails", (a, b, c))
                if mul(add(a, b), c) != add(mul(a, c), mul(b, c)):
                    raise StructureError("right distributivity fails", (a, b, c))


def is_semiring(r: Semiring, elements: Optional[Sequence] = None) -> bool:
    try:
        check_semiring(r, elements)
    except StructureError:
        return False
    return True


# ---------------------------------------------------------------------------
# Matrices

@dataclass(frozen=True)
class SemiringMatrix:
    semiring: Semiring
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ConfigurationError(f"entries do not form a {self.rows}x{self.cols} matrix")
        if self.semiring.finite:
            allowed = set(self.semiring.elements)
            for r in entries:
                for v in r:
                    if v not in allowed:
                        raise ConfigurationError(f"{v!r} is not an element of {self.semiring.name}")

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def to_list(self) -> list:
        return [list(r) for r in self.entries]

    def to_json(self) -> str:
        return json.dumps({"semiring": self.semiring.name, "rows": self.rows, "cols": self.cols,
                           "entries": [[_jsonable(v) for v in r] for r in self.entries]})

    @classmethod
    def from_json(cls, text: str) -> "SemiringMatrix":
        d = json.loads(text)
        r = semiring_by_name(d["semiring"])
        return cls(r, d["rows"], d["cols"], [[_unjson(v) for v in row] for row in d["entries"]])

    def __repr__(self):
        return f"SemiringMatrix[{self.semiring.name}]({self.to_list()})"


def _jsonable(v):
    return "inf" if v == INF else v


def _unjson(v):
    return INF if v == "inf" else v


def matrix(r: Semiring, rows: Sequence[Sequence], cols: Optional[int] = None) -> SemiringMatrix:
    rows = [list(x) for x in rows]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    return SemiringMatrix(r, len(rows), cols, rows)


def identity_matrix(r: Semiring, n: int) -> SemiringMatrix:
    return SemiringMatrix(r, n, n, [[r.one if i == j else r.zero for j in range(n)] for i in range(n)])


def zero_matrix(r: Semiring, rows: int, cols: int) -> SemiringMatrix:
    return SemiringMatrix(r, rows, cols, [[r.zero] * cols for _ in range(rows)])


def _same_semiring(a: SemiringMatrix, b: SemiringMatrix) -> Semiring:
    if a.semiring != b.semiring:
        raise ConfigurationError(f"semiring mismatch: {a.semiring.name} vs {b.semiring.name}")
    return a.semiring


def mat_mul(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    """Ordinary product ``a @ b`` (requires ``a.cols == b.rows``)."""
    r = _same_semiring(a, b)
    if a.cols != b.rows:
        raise CompositionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    entries = [[r.sum(r.mul(a.entries[i][k], b.entries[k][j]) for k in range(a.cols))
                for j in range(b.cols)] for i in range(a.rows)]
    return SemiringMatrix(r, a.rows, b.cols, entries)


def compose(f: SemiringMatrix, g: SemiringMatrix) -> SemiringMatrix:
    """``f: m -> n`` then ``g: n -> k`` in the matrix category."""
    return mat_mul(g, f)


def mat_add(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    r = _same_semiring(a, b)
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise CompositionMismatch("matrix shapes differ")
    return SemiringMatrix(r, a.rows, a.cols,
                          [[r.add(u, v) for u, v in zip(x, y)] for x, y in zip(a.entries, b.entries)])


def mat_neg(a: SemiringMatrix) -> SemiringMatrix:
    r = a.semiring
    if r.neg is None:
        raise ConfigurationError(f"{r.name} has no additive inverses")
    return SemiringMatrix(r, a.rows, a.cols, [[r.neg(v) for v in row] for row in a.entries])


def mat_sub(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    return mat_add(a, mat_neg(b))


def kron(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    """Kronecker product; row ``(i, k)`` sits at ``i * b.rows + k``."""
    r = _same_semiring(a, b)
    entries = [[r.mul(a.entries[i][j], b.entries[k][l])
                for j in range(a.cols) for l in range(b.cols)]
               for i in range(a.rows) for k in range(b.rows)]
    return SemiringMatrix(r, a.rows * b.rows, a.cols * b.cols, entries)


def direct_sum(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    r = _same_semiring(a, b)
    z = r.zero
    entries = [list(row) + [z] * b.cols for row in a.entries] + \
              [[z] * a.cols + list(row) for row in b.entries]
    return SemiringMatrix(r, a.rows + b.rows, a.cols + b.cols, entries)


def permutation_matrix(r: Semiring, perm: Sequence[int]) -> SemiringMatrix:
    """Matrix sending basis vector ``j`` to ``perm[j]``."""
    n = len(perm)
    return SemiringMatrix(r, n, n, [[r.one if perm[j] == i else r.zero for j in range(n)]
                                    for i in range(n)])


def commutation_perm(m: int, n: int) -> list[int]:
    """Index permutation carrying the pair ``(i, j)`` at ``i*n + j`` to ``j*m + i``."""
    return [j * m + i for i in range(m) for j in range(n)]


def random_matrix(r: Semiring, rows: int, cols: int, rng: random.Random,
                  elements: Optional[Sequence] = None) -> SemiringMatrix:
    els = tuple(elements) if elements is not None else r.test_elements()
    return SemiringMatrix(r, rows, cols, [[rng.choice(els) for _ in range(cols)] for _ in range(rows)])


def enumerate_matrices(r: Semiring, rows: int, cols: int, elements: Optional[Sequence] = None,
                       budget: int = DEFAULT_BUDGET):
    els = tuple(elements) if elements is not None else r.test_elements()
    total = len(els) ** (rows * cols)
    if total > budget:
        raise BudgetExceeded(f"{total} matrices exceed budget {budget}")
    for flat in _cartesian(els, repeat=rows * cols):
        yield SemiringMatrix(r, rows, cols, [flat[i * cols:(i + 1) * cols] for i in range(rows)])


# ---------------------------------------------------------------------------
# Categories with a semiring of endomorphisms of the unit object

class MatrixCategory:
    """The matrix category over ``r``: the semiadditive theory with End(1) = r."""

    def __init__(self, r: Semiring, sample: Optional[Sequence] = None):
        self.semiring = r
        self.name = f"Burn_{r.name}"
        self.sample = tuple(sample) if sample is not None else r.test_elements()

    def hom(self, m: int, n: int, elements: Optional[Sequence] = None):
        return enumerate_matrices(self.semiring, n, m, elements)

    def compose(self, f, g):
        return compose(f, g)

    def add(self, f, g):
        return mat_add(f, g)

    def identity(self, n: int):
        return identity_matrix(self.semiring, n)

    def zero(self, m: int, n: int):
        return zero_matrix(self.semiring, n, m)

    def unit_endomorphisms(self) -> tuple:
        r = self.semiring
        return tuple(matrix(r, [[v]]) for v in self.sample)

    def is_finite(self) -> bool:
        return self.semiring.finite


class SpanClassCategory:
    """Span classes of finite sets; End(1) consists of the classes ``[[k]]``."""

    name = "Span"

    def __init__(self, sample_bound: int = 10):
        self.sample_bound = sample_bound

    def compose(self, f, g):
        from .spancat import compose_classes
        return compose_classes(f, g)

    def add(self, f, g):
        from .spancat import add_classes
        return add_classes(f, g)

    def identity(self, n: int):
        from .spancat import identity_class
        return identity_class(n)

    def zero(self, m: int, n: int):
        from .spancat import zero_class
        return zero_class(m, n)

    def unit_endomorphisms(self) -> tuple:
        from .spancat import SpanClass
        return tuple(SpanClass(1, 1, [[k]]) for k in range(self.sample_bound + 1))

    def is_finite(self) -> bool:
        return False


def end_of_unit(cat) -> Semiring:
    """The semiring ``End(1)``: hom-monoid addition and composition.

    The semiring axioms are verified on the extracted structure (exhaustively
    for finite carriers, on the representative sample otherwise).
    """
    reps = cat.unit_endomorphisms()
    add = cat.add
    # composition "b after a" is the semiring product a*b read right-to-left
    mul = lambda a, b: cat.compose(b, a)
    finite = cat.is_finite()
    r = Semiring(f"End_{cat.name}(1)", add, mul, cat.zero(1, 1), cat.identity(1),
                 reps if finite else None, () if finite else reps)
    check_semiring(r)
    return r


def semiring_isomorphic(r: Semiring, s: Semiring, phi: Callable, elements: Sequence) -> bool:
    """Is ``phi: r -> s`` an injective semiring homomorphism on ``elements``?"""
    images = [phi(a) for a in elements]
    if len(set(images)) != len(images):
        return False
    if phi(r.zero) != s.zero or phi(r.one) != s.one:
        return False
    for a in elements:
        for b in elements:
            if phi(r.add(a, b)) != s.add(phi(a), phi(b)):
                return False
            if phi(r.mul(a, b)) != s.mul(phi(a), phi(b)):
                return False
    return True


def semiadditive_check(r: Semiring, max_size: int, elements: Optional[Sequence] = None,
                       budget: int = 1_000, seed: int = 0) -> bool:
    """Biproduct identities in the matrix category over ``r``.

    For every ``m, n <= max_size`` the block injections and projections of
    ``m ⊕ n`` must satisfy ``p_i ι_j = δ_ij`` and ``ι_0 p_0 + ι_1 p_1 = id``;
    every morphism into (resp. out of) ``m ⊕ n`` must be recovered from its
    components, and ``hom(m, n)`` must be in bijection with ``R^{mn}``.
    Hom-sets too large to enumerate within ``budget`` are sampled.
    """
    rng = random.Random(seed)
    els = tuple(elements) if elements is not None else r.test_elements()
    I = lambda n: identity_matrix(r, n)
    Z = lambda rows, cols: zero_matrix(r, rows, cols)
    for m in range(max_size + 1):
        for n in range(max_size + 1):
            s = m + n
            i0 = matrix(r, [[r.one if a == b else r.zero for b in range(m)] for a in range(s)], m)
            i1 = matrix(r, [[r.one if a == m + b else r.zero for b in range(n)] for a in range(s)], n)
            p0 = matrix(r, [[r.one if b == a else r.zero for b in range(s)] for a in range(m)], s)
            p1 = matrix(r, [[r.one if b == m + a else r.zero for b in range(s)] for a in range(n)], s)
            if mat_mul(p0, i0) != I(m) or mat_mul(p1, i1) != I(n):
                return False
            if mat_mul(p0, i1) != Z(m, n) or mat_mul(p1, i0) != Z(n, m):
                return False
            if mat_add(mat_mul(i0, p0), mat_mul(i1, p1)) != I(s):
                return False
            for k in range(max_size + 1):
                for f in _homs_or_sample(r, s, k, els, budget, rng):
                    # f: k -> m ⊕ n is determined by its two components
                    if mat_add(mat_mul(i0, mat_mul(p0, f)), mat_mul(i1, mat_mul(p1, f))) != f:
                        return False
                for g in _homs_or_sample(r, k, s, els, budget, rng):
                    if mat_add(mat_mul(mat_mul(g, i0), p0), mat_mul(mat_mul(g, i1), p1)) != g:
                        return False
            # hom(m, n) ≅ R^{mn} via entries
            if r.finite and len(els) ** (m * n) <= budget:
                homs = list(enumerate_matrices(r, n, m, els, budget))
                if len({h.entries for h in homs}) != len(els) ** (m * n):
                    return False
    return True


def _homs_or_sample(r, rows, cols, els, budget, rng, samples=64):
    total = len(els) ** (rows * cols)
    if total <= budget:
        return list(enumerate_matrices(r, rows, cols, els, budget))
    return [random_matrix(r, rows, cols, rng, els) for _ in range(samples)]


def virtual_span_category(bound: int = 10) -> MatrixCategory:
    """Integer matrices: formal differences of span classes, sampled on ``[-bound, bound]``."""
    return MatrixCategory(INTEGERS, range(-bound, bound + 1))


def group_complete(m) -> SemiringMatrix:
    """Include a span class (natural-number matrix) into integer matrices."""
    return SemiringMatrix(INTEGERS, m.target, m.source, m.rows)
