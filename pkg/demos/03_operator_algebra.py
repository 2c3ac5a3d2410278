"""Right inverses and initial operators on a finite difference operator.

D is the forward difference on Q^6.  Its canonical right inverse sums
cumulatively from zero; F = I - R D picks out the first entry.
"""
import random

from qcalc import (
    OperatorTower,
    build_difference_instance,
    family_member,
    is_initial_operator,
    kernel_gradation,
    monomial_basis,
    poly_expand_matrix,
    taylor_identity_residual,
)
from qcalc.suites import random_matrix

D = build_difference_instance("forward", 6)
tower = OperatorTower(D)
print("R =\n" + tower.top.R.to_text())
print("F =\n" + tower.top.F.to_text())

squares = [n * n for n in range(6)]
zs = poly_expand_matrix(tower, squares, 2)
print("squares = sum R^k z_k with z_k =", [[str(x) for x in z] for z in zs])

print("Taylor identity residual zero for m = 0..5:",
      all(taylor_identity_residual(tower, m).is_zero() for m in range(6)))

S = build_difference_instance("stride", 9, 3)
print("stride-3 kernel gradation dims:", kernel_gradation(S, 3).dims)
print("monomial basis size for n = 2:", len(monomial_basis(OperatorTower(S), S.nullspace(), 2)))

A = random_matrix(random.Random(0), 6, 5)
R2 = family_member(D, tower.top.R, tower.top.F, A, "right")
F2 = family_member(D, tower.top.R, tower.top.F, A, "initial")
print("perturbed R still a right inverse:", (D @ R2).is_identity(),
      " perturbed F still initial:", is_initial_operator(D, F2))
