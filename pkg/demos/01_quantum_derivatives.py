"""Quantum derivatives in four classical calculi.

Each preset fixes the shifts sigma, tau and uses the plain difference as
tension, so D f(p) = [f(tau p) - f(sigma p)] / (tau p - sigma p).
"""
from fractions import Fraction as F

from qcalc import Polynomial, ZeroTension, leibniz_residual, make_preset, qderiv, qderiv_all

cube = Polynomial([0, 0, 0, 1])

frames = [
    make_preset("h", h=1),
    make_preset("q", q=2),
    make_preset("h_symmetric", h=F(1, 2)),
    make_preset("q_symmetric", q=3),
]

print("D x^3 at p = 2, then the whole ladder D^0..D^4")
for frame in frames:
    ladder = qderiv_all(frame, cube, 4, F(2))
    print(f"  {frame.name:8}  D x^3(2) = {qderiv(frame, cube, F(2))!s:6}  ladder {[str(v) for v in ladder]}")

# The q-derivative of x^n is the q-integer [n] = 1 + q + ... + q^(n-1) times x^(n-1).
q2 = frames[1]
for n in range(1, 6):
    xn = Polynomial([0] * n + [1])
    print(f"  Q(2): D x^{n}(1) = {qderiv(q2, xn, F(1))}")

# Product rule with the shifted factor in front.
f, g = Polynomial([1, -2, 3]), Polynomial([0, F(1, 2), 0, 4])
print("Leibniz residuals:", [str(leibniz_residual(fr, f, g, F(5, 7))) for fr in frames])

try:
    qderiv(q2, cube, F(0))
except ZeroTension as exc:
    print("expected failure:", exc)
