"""Spans of finite sets and their fiber-count matrices.

A span X <- S -> Y is determined up to isomorphism by how many points of S
sit over each pair (x, y). Composing spans by pullback turns into matrix
multiplication, and disjoint union of middles turns into matrix addition.
"""
from lawvere import finset as fs
from lawvere import spancat as sc

# A span 2 <- 3 -> 2 written out with explicit legs.
s = sc.span_from_legs([0, 0, 1], [1, 0, 1], source=2, target=2)
t = sc.span_from_legs([0, 1], [0, 0], source=2, target=1)
print("matrix of s:", sc.span_matrix(s).rows)
print("matrix of t:", sc.span_matrix(t).rows)

# Pullback composition agrees with the matrix product.
st = sc.compose_spans(s, t)
print("t after s, by pullback:", sc.span_matrix(st).rows)
print("same, by matrices:     ", sc.compose_classes(sc.span_matrix(s), sc.span_matrix(t)).rows)

# Addition of spans is the disjoint union of middles.
print("s + s:", sc.span_matrix(sc.add_spans(s, s)).rows)

# Going back from a matrix gives a canonical representative.
rep = sc.matrix_span(sc.span_matrix(s))
print("representative middle size:", rep.middle.size)

# The empty span is the zero, and the diagonal span is the identity.
print("zero 2->3:", sc.zero_class(2, 3).rows)
print("identity on 3:", sc.identity_class(3).rows)

# Counting: span classes 1 -> 1 with at most 3 points are the numbers 0..3.
print("classes 1->1, entries <= 3:", [m.rows for m in sc.enumerate_classes(1, 1, 3)])
print("maps 2 -> 3:", fs.count_maps(fs.finset(2), fs.finset(3)))
