"""The Taylor identity on an orbit lattice, for a function that is not a polynomial.

On a symmetric q-calculus the nodes are sigma(anchor), mu sigma(anchor), ...
with mu = tau sigma^-1.  The identity f = sum R^k F D^k f + R^(m+1) D^(m+1) f
holds exactly at every node.
"""
from fractions import Fraction as F

from qcalc import OrbitGrid, ScalarFn, make_preset, operator_taylor_check, orbit_right_inverse, qderiv

frame = make_preset("q_symmetric", q=2)
grid = OrbitGrid(frame, F(1), 8)
print("nodes:", [str(x) for x in grid.nodes])

reciprocal = ScalarFn(lambda x: 1 / x, "1/x")
R = orbit_right_inverse(frame, grid, reciprocal)
print("D(R f) - f on preimages:", {str(qderiv(frame, R, p) - reciprocal(p)) for p in grid.preimages})

for m in range(4):
    residuals = {operator_taylor_check(frame, grid, reciprocal, m, j) for j in range(grid.J + 1)}
    print(f"m = {m}: residuals {sorted(str(r) for r in residuals)}")
