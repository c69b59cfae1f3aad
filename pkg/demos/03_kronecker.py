"""Tensoring theories and the Eckmann-Hilton collapse.

The Kronecker product of two theories keeps both signatures and adds an
interchange law for each pair of operations. Two monoid structures that
commute with each other must coincide and be commutative.
"""
from lawvere import kronecker as kr
from lawvere import semimat as sm
from lawvere import theory

mon = theory.monoid_theory()
both = kr.kronecker_presentation(mon, mon)
print("operations:", [op.name for op in both.ops])
print("equations:", len(both.eqs))

for n in (1, 2, 3):
    r = kr.eckmann_hilton_report(n)
    print(f"size {n}: Mon(x)Mon classes={r.monmon_count}, CMon classes={r.cmon_count}, "
          f"collapse={r.collapse}")

# The trivial theory is a unit for the tensor.
print("unit law at size 2:", kr.unit_check(mon, 2))

# On free modules the tensor of morphisms is the Kronecker product of matrices.
a = sm.matrix(sm.NATURALS, [[1, 2]])
b = sm.matrix(sm.NATURALS, [[0, 1], [1, 0]])
print("a (x) b:", kr.day_tensor_fgf(sm.NATURALS, a, b).entries)
