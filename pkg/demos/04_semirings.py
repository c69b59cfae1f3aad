"""Matrices over a semiring and recovering the semiring from the category.

Matrices over R form a category with biproducts. The endomorphisms of the
unit object form a semiring, and it is R again. Span classes give the
natural numbers, and integer matrices give their group completion.
"""
import random

from lawvere import semimat as sm
from lawvere import spancat as sc

rng = random.Random(0)
for name in ("N", "B", "T", "Z/3"):
    r = sm.semiring_by_name(name)
    f = sm.random_matrix(r, 2, 2, rng)
    g = sm.random_matrix(r, 2, 2, rng)
    print(f"{name}: g after f =", sm.compose(f, g).entries)

# Tropical semiring: min-plus shortest paths in two steps.
T = sm.TROPICAL
d = sm.matrix(T, [[0, 4, sm.INF], [sm.INF, 0, 1], [2, sm.INF, 0]])
print("two-step distances:", sm.mat_mul(d, d).entries)

# The semiadditive structure determines the semiring.
for name in ("B", "Z/2"):
    print(f"semiadditive check for {name}:", sm.semiadditive_check(sm.semiring_by_name(name), 2))

# Span classes embed into integer matrices, where negatives become available.
m = sc.SpanClass.from_rows([[1, 2], [0, 1]])
z = sm.group_complete(m)
print("m - m over Z:", sm.mat_sub(z, z).entries)
