"""Shared generators for the test suite."""

import random

from lawvere.theory import App, Presentation, Term, Var


def random_term(p: Presentation, arity: int, depth: int, rng: random.Random) -> Term:
    ops = list(p.ops)
    leaves = [o for o in ops if o.arity == 0]
    if depth == 0 or not ops or rng.random() < 0.3:
        if arity and (not leaves or rng.random() < 0.8):
            return Var(rng.randrange(arity))
        if leaves:
            return App(rng.choice(leaves).name)
        return Var(0)
    o = rng.choice(ops)
    return App(o.name, tuple(random_term(p, arity, depth - 1, rng) for _ in range(o.arity)))
