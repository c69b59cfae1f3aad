"""Algebraic theories, finite models, homomorphisms and free models.

Theories come from the builtin catalogue or from a small text format.
Models on n points are found by search; free models are truncated by term
size so that Yoneda-style counts can be checked on bounded data.
"""
from lawvere import dsl, models, theory

source = """
# commutative monoids, written by hand
theory cmon {
  op e : 0;
  op m : 2;
  eq (2) m(x0, x1) = m(x1, x0);
  eq (3) m(m(x0, x1), x2) = m(x0, m(x1, x2));
  eq (1) m(e, x0) = x0;
}
"""
# These equations are literally the builtin ones, so the builtin normal
# form procedure is attached. Other axiomatisations still parse and support
# model search, but free models need a normal form.
cmon = dsl.parse_theory(source)
print(dsl.format_theory(cmon))

# Normal forms decide the word problem for the builtin theories.
x, y = theory.var(0), theory.var(1)
lhs = theory.app("m", y, theory.app("m", x, theory.app("e")))
rhs = theory.app("m", x, y)
print("m(y, m(x, e)) == m(x, y):", theory.bounded_eq(lhs, rhs, cmon, 6).value)

# Commutative monoids on up to 3 points, counted up to isomorphism.
for n in range(1, 4):
    print(f"CMon models of size {n}:", len(models.enumerate_models(cmon, n)))

# Homomorphisms between two small models.
a, b = models.enumerate_models(cmon, 2)[:2]
print("homs a -> b:", models.search_homs(a, b))

# The free model on one generator, truncated at terms of size 4.
free = models.free_model(cmon, 1, 4)
print("free model carrier size:", free.size)

# Yoneda: homs out of the free model on m generators match m-tuples.
print("Yoneda check (m=1, n=2):", models.yoneda_check(cmon, 1, 2, 4))
