"""Finite G-sets, the table of marks, Burnside data and equivariant spans."""
from lawvere import gsets as gs

s3 = gs.symmetric_group(3)
classes = gs.subgroup_classes(s3)
print("S3 subgroup classes by order:", [c.order for c in classes])
print("table of marks:")
for row in gs.table_of_marks(s3):
    print("   ", row)

# Orbit decomposition of S3 acting on itself times the cosets of C3.
c3 = classes[2].rep
x = gs.gset_product(gs.regular_gset(s3), gs.coset_space(s3, c3))
dec = gs.orbit_decompose(x)
print("orbit counts of G x G/C3 per subgroup class:", dec.counts)
print("marks of G x G/C3:", gs.marks_of(s3, x))

# Burnside data: products of transitive G-sets in the orbit basis.
b = gs.BurnsideData(s3)
two_points = b.basis(2)  # S3/C3
print("[S3/C3] * [S3/C3] =", b.mul(two_points, two_points))
print("marks are multiplicative:",
      b.mark_vector(b.mul(two_points, two_points))
      == tuple(u * v for u, v in zip(b.mark_vector(two_points), b.mark_vector(two_points))))

# Equivariant spans over C2 compose by pullback and add by disjoint union.
c2 = gs.cyclic_group(2)
pt = gs.trivial_gset(c2, 1)
free = gs.regular_gset(c2)
idf = gs.identity_gspan(free)
print("class of id on C2:", gs.gspan_class(idf))
print("class of id + id:", gs.gspan_class(gs.add_gspans(idf, idf)))

# Presheaves on orbits and product-preserving functors agree on small data.
r = gs.elmendorf_report(c2, 2)
print("candidates={candidates} presheaves={presheaves} functors={functors} ok={ok}".format(**r))
