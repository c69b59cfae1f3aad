"""Kronecker product of presentations and its model-level checks.

The product of two presentations has both signatures, both sets of equations,
and one interchange law per pair of operations saying that each operation of
one theory is a homomorphism for the other. For two constants the law reads
``f = g``; that convention is what makes the two units of a Mon ⊗ Mon model
coincide.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as _cartesian

from .errors import ConfigurationError
from .models import Model, canonical_form, enumerate_models, search_models
from .semimat import (Semiring, SemiringMatrix, commutation_perm, kron, mat_mul,
                      permutation_matrix, _same_semiring)
from .theory import (App, Equation, OpSym, Presentation, Term, Var, cmon_theory,
                     monoid_theory)


def _rename_term(t: Term, names: dict) -> Term:
    if isinstance(t, Var):
        return t
    return App(names[t.op], tuple(_rename_term(a, names) for a in t.args))


def rename_presentation(p: Presentation, names: dict, name: str | None = None) -> Presentation:
    ops = [OpSym(names[o.name], o.arity) for o in p.ops]
    eqs = [Equation(e.context_size, _rename_term(e.lhs, names), _rename_term(e.rhs, names))
           for e in p.eqs]
    return Presentation(name or p.name, ops, eqs, None)


def disjoint_names(p1: Presentation, p2: Presentation) -> tuple[dict, dict]:
    """Operation renamings making the two signatures disjoint.

    Names are kept when they already differ; otherwise every symbol gets a
    ``_1`` / ``_2`` suffix.
    """
    n1 = [o.name for o in p1.ops]
    n2 = [o.name for o in p2.ops]
    if not set(n1) & set(n2):
        r1, r2 = {n: n for n in n1}, {n: n for n in n2}
    else:
        r1, r2 = {n: f"{n}_1" for n in n1}, {n: f"{n}_2" for n in n2}
    if set(r1.values()) & set(r2.values()):
        raise ConfigurationError("operation names still clash after renaming")
    return r1, r2


def interchange_equation(f: OpSym, g: OpSym) -> Equation:
    """``f(g(x_11..x_1q), ..., g(x_p1..x_pq)) = g(f(x_11..x_p1), ..., f(x_1q..x_pq))``.

    The variable ``x_ij`` is ``x{i*q + j}``.
    """
    p, q = f.arity, g.arity
    x = lambda i, j: Var(i * q + j)
    lhs = App(f.name, tuple(App(g.name, tuple(x(i, j) for j in range(q))) for i in range(p)))
    rhs = App(g.name, tuple(App(f.name, tuple(x(i, j) for i in range(p))) for j in range(q)))
    return Equation(p * q, lhs, rhs)


def kronecker_presentation(p1: Presentation, p2: Presentation) -> Presentation:
    r1, r2 = disjoint_names(p1, p2)
    a, b = rename_presentation(p1, r1), rename_presentation(p2, r2)
    inter = [interchange_equation(f, g) for f in a.ops for g in b.ops]
    return Presentation(f"{p1.name}⊗{p2.name}", a.ops + b.ops, a.eqs + b.eqs + tuple(inter), None)


# ---------------------------------------------------------------------------
# Bimodels

def _power_op(m: Model, k: int, p: int, args: list) -> tuple:
    """Apply operation ``k`` of ``m`` componentwise on ``p``-tuples."""
    arity = m.presentation.ops[k].arity
    if arity == 0:
        return tuple(m.apply(k, ()) for _ in range(p))
    return tuple(m.apply(k, [a[i] for a in args]) for i in range(p))


def is_bimodel(m1: Model, m2: Model) -> bool:
    """Is every operation of ``m1`` a homomorphism ``m2^p -> m2``?

    ``m2^p`` carries the componentwise structure.
    """
    n = m1.size
    for k1, f in enumerate(m1.presentation.ops):
        p = f.arity
        for k2, g in enumerate(m2.presentation.ops):
            q = g.arity
            for cols in _cartesian(_cartesian(range(n), repeat=p), repeat=q):
                # cols[j] is the j-th argument of g, a point of m2^p
                inside = _power_op(m2, k2, p, list(cols))
                if m1.apply(k1, inside) != m2.apply(k2, [m1.apply(k1, c) for c in cols]):
                    return False
    return True


def _merge(m1: Model, m2: Model, prod: Presentation) -> Model:
    return Model(prod, m1.size, m1.tables + m2.tables)


def bimodels(p1: Presentation, p2: Presentation, size: int) -> list[Model]:
    """Labeled pairs of structures on ``size`` elements that commute, as product models."""
    prod = kronecker_presentation(p1, p2)
    left, right = search_models(p1, size), search_models(p2, size)
    out = [_merge(a, b, prod) for a in left for b in right if is_bimodel(a, b)]
    return sorted(out, key=Model.key)


def bimodel_report(p1: Presentation, p2: Presentation, size: int) -> dict:
    prod = kronecker_presentation(p1, p2)
    rows = []
    ok = True
    for n in range(size + 1):
        direct = search_models(prod, n)
        pairs = bimodels(p1, p2, n)
        same = [m.tables for m in direct] == [m.tables for m in pairs]
        ok &= same
        rows.append({"size": n, "product_models": len(direct), "bimodels": len(pairs),
                     "equal": same})
    return {"left": p1.name, "right": p2.name, "sizes": rows, "ok": ok}


def bimodel_check(p1: Presentation, p2: Presentation, size: int) -> bool:
    """Models of ``p1 ⊗ p2`` on each carrier up to ``size`` are exactly the bimodels."""
    return bimodel_report(p1, p2, size)["ok"]


def unit_check(p: Presentation, size: int) -> bool:
    """``trivial ⊗ p`` has literally the same models as ``p`` on each carrier."""
    from .theory import trivial_theory
    prod = kronecker_presentation(trivial_theory(), p)
    return all([m.tables for m in search_models(prod, n)] ==
               [m.tables for m in search_models(p, n)] for n in range(size + 1))


def swap_check(p1: Presentation, p2: Presentation, size: int) -> bool:
    """``p1 ⊗ p2`` and ``p2 ⊗ p1`` have the same models after reordering tables."""
    a, b = kronecker_presentation(p1, p2), kronecker_presentation(p2, p1)
    k1, k2 = len(p1.ops), len(p2.ops)
    for n in range(size + 1):
        left = sorted(m.tables[k1:] + m.tables[:k1] for m in search_models(a, n))
        right = sorted(m.tables for m in search_models(b, n))
        if left != right:
            return False
    return True


# ---------------------------------------------------------------------------
# Eckmann–Hilton

@dataclass
class EckmannHiltonReport:
    size: int
    monmon_count: int
    cmon_count: int
    collapse: bool
    matching: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.collapse and self.monmon_count == self.cmon_count and \
            len(self.matching) == self.cmon_count

    def to_dict(self) -> dict:
        return {"size": self.size, "monmon": self.monmon_count, "cmon": self.cmon_count,
                "collapse": self.collapse, "matching": self.matching, "ok": self.ok}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def eckmann_hilton_report(size: int) -> EckmannHiltonReport:
    """Compare Mon ⊗ Mon models with commutative monoids on ``size`` elements.

    Every labeled Mon ⊗ Mon model is checked to have equal units, equal
    multiplications and a commutative multiplication. Iso classes are then
    matched by forgetting the second structure.
    """
    mon, cmon = monoid_theory(), cmon_theory()
    prod = kronecker_presentation(mon, mon)
    labeled = search_models(prod, size)
    n = size
    collapse = True
    for m in labeled:
        e1, m1, e2, m2 = m.tables
        commutative = all(m1[a * n + b] == m1[b * n + a] for a in range(n) for b in range(n))
        collapse &= e1 == e2 and m1 == m2 and commutative
    classes = sorted({canonical_form(m) for m in labeled}, key=Model.key)
    cm = enumerate_models(cmon, size)
    cm_keys = {c.tables: i for i, c in enumerate(cm)}
    matching = []
    for i, m in enumerate(classes):
        image = canonical_form(Model(cmon, n, m.tables[:2]))
        j = cm_keys.get(image.tables)
        if j is not None:
            matching.append([i, j])
    return EckmannHiltonReport(size, len(classes), len(cm), collapse, matching)


# ---------------------------------------------------------------------------
# Day convolution on finitely generated free objects

def day_tensor_fgf(r: Semiring, a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    """Tensor of morphisms between free objects: the Kronecker product.

    Objects multiply (``m ⊗ n = mn``) and the unit object is 1.
    """
    if a.semiring != r or b.semiring != r:
        raise ConfigurationError(f"matrices must be over {r.name}")
    return kron(a, b)


def symmetry_conjugate(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    """``P (a ⊗ b) Q^{-1}`` with ``P, Q`` the commutation permutations; equals ``b ⊗ a``."""
    r = _same_semiring(a, b)
    P = permutation_matrix(r, commutation_perm(a.rows, b.rows))
    # Qinv sends basis (i, j) of b ⊗ a back to (j, i) of a ⊗ b
    Qinv = permutation_matrix(r, _inverse(commutation_perm(a.cols, b.cols)))
    return mat_mul(mat_mul(P, kron(a, b)), Qinv)


def _inverse(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv
