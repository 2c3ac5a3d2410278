"""Expanding a polynomial in the Lambda basis of a q-calculus.

The Lambda polynomials vanish at the base point and step down under D, so
the coefficients of W are just D^k W evaluated at the base point.
"""
from fractions import Fraction as F

from qcalc import (
    ConstantBasis,
    LambdaPoly,
    Polynomial,
    classical_taylor_crosscheck,
    make_preset,
    taylor_expand,
    taylor_reconstruct,
)

frame = make_preset("q", q=F(3, 2))
basis = ConstantBasis.for_frame(frame)          # the constant 1 based at q_s = 1
W = Polynomial([F(-1), 0, F(5, 2), 0, 1])     # x^4 + 5/2 x^2 - 1

exp = taylor_expand(frame, basis, W, 4)
print(exp.to_tsv())

for p in (F(0), F(2), F(-7, 3)):
    print(f"W({p}) = {W(p)}   reconstructed = {taylor_reconstruct(exp, basis, p)}")

L3 = LambdaPoly(frame, basis, "1", 3)
print("Lambda^(0..3) at the base point:", [str(v) for v in L3.values(F(1))])

# As h shrinks the h-calculus coefficients approach the classical Taylor ones.
print("classical coefficients about 1:", [str(c) for c in classical_taylor_crosscheck(W.coeffs, F(1), 4)])
for h in (F(1, 10), F(1, 100), F(1, 1000)):
    hframe = make_preset("h", h=h, base_points=[("1", 1)])
    rows = taylor_expand(hframe, ConstantBasis.unit(F(1)), W, 4).rows()
    print(f"  h = {h}:", [f"{float(r[3]):.4f}" for r in rows])
