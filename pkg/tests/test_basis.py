import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from common import PRESETS, PRESET_IDS, samples
from oracles import h_lambda, q_lambda, qint_closed, sym_rank
from qcalc import (
    ConstantBasis,
    DegreeExceeded,
    InsufficientSamples,
    InvalidKernelBasis,
    LambdaPoly,
    NoInverse,
    OrbitGrid,
    Polynomial,
    QuantumFrame,
    QuantumInt,
    ScalarFn,
    ShiftMap,
    TensionFn,
    ZeroFactor,
    ZetaPoly,
    check_degree,
    coeff_extract,
    degree_of_function,
    lambda_poly_eval,
    make_preset,
    qderiv,
    quantum_factorial,
    quantum_int,
    theta_descent_residual,
    theta_poly_eval,
    zeta_poly_eval,
)
from qcalc.basis import basis_rows

H1 = make_preset("h", h=1)
Q2 = make_preset("q", q=2, base_points=[("1", 1)])
UNIT_H = ConstantBasis.unit(F(0))
UNIT_Q = ConstantBasis.unit(F(1))
square = Polynomial([0, 0, 1])


def test_quantum_int_examples():
    assert quantum_int(QuantumInt(2, 1), 3) == 7
    assert quantum_int(QuantumInt(1, 1), 5) == 5
    assert quantum_int(QuantumInt(F(3, 7), F(5)), 0) == 0
    assert quantum_int(QuantumInt(F(3, 7), F(5)), 1) == 1


def test_quantum_factorial_examples():
    assert quantum_factorial(QuantumInt(2, 1), 0) == 1
    assert quantum_factorial(QuantumInt(2, 1), 3) == 21
    assert quantum_factorial(QuantumInt(1, 1), 4) == 24


def test_quantum_factorial_zero_factor():
    # t = -s makes [2] = t + s vanish
    with pytest.raises(ZeroFactor):
        quantum_factorial(QuantumInt(F(-1), F(1)), 3)


@given(t=st.fractions(min_value=F(1, 8), max_value=8, max_denominator=8),
       s=st.fractions(min_value=F(1, 8), max_value=8, max_denominator=8),
       n=st.integers(0, 32))
def test_quantum_int_closed_form(t, s, n):
    q = QuantumInt(t, s)
    assert q(n) == qint_closed(t, s, n)
    if n >= 1:
        assert q(n) > 0


def test_quantum_int_equal_parameters():
    q = QuantumInt(F(3, 2), F(3, 2))
    assert q(0) == 0
    for n in range(1, 33):
        assert q(n) == n * F(3, 2) ** (n - 1)


def test_theta_poly_examples():
    for frame in PRESETS:
        assert theta_poly_eval(frame, frame.base_point(), 0, F(11, 3)) == 1
    assert theta_poly_eval(H1, F(0), 2, F(3)) == 6
    assert theta_poly_eval(Q2, F(1), 2, F(3)) == 2


def test_theta_descent_examples():
    assert theta_descent_residual(H1, F(0), 2, F(3)) == 0
    assert theta_descent_residual(Q2, F(1), 2, F(3)) == 0
    for frame in PRESETS:
        assert theta_descent_residual(frame, frame.base_point(), 1, samples(frame)[0]) == 0


@pytest.mark.parametrize("frame", PRESETS, ids=PRESET_IDS)
def test_theta_descent_all_orders(frame):
    q = frame.base_point()
    for n in range(1, 9):
        for p in samples(frame):
            assert theta_descent_residual(frame, q, n, p) == 0


def test_zeta_poly_examples():
    for frame in PRESETS:
        basis = ConstantBasis.for_frame(frame)
        assert zeta_poly_eval(frame, basis, "1", 0, F(13, 5)) == 1
    assert zeta_poly_eval(H1, UNIT_H, "1", 2, F(3)) == 3
    assert zeta_poly_eval(Q2, UNIT_Q, "1", 1, F(3)) == 2


def test_zeta_needs_sigma_inverse():
    sigma = ShiftMap(lambda x: x / 2, name="sigma")
    frame = QuantumFrame(sigma, ShiftMap.affine(2, 0, "tau"), TensionFn.difference(),
                         F(1, 2), F(2), (("1", F(1)),))
    with pytest.raises(NoInverse):
        ZetaPoly(frame, ConstantBasis.unit(F(1)), "1", 1)
    assert ZetaPoly(frame, ConstantBasis.unit(F(1)), "1", 0)(F(5)) == 1


@pytest.mark.parametrize("frame", PRESETS, ids=PRESET_IDS)
def test_zeta_descent(frame):
    basis = ConstantBasis.for_frame(frame)
    for k in range(1, 9):
        upper, lower = ZetaPoly(frame, basis, "1", k), ZetaPoly(frame, basis, "1", k - 1)
        for p in samples(frame):
            assert qderiv(frame, upper, p) == lower(p)


def test_lambda_examples():
    assert lambda_poly_eval(H1, UNIT_H, "1", 0, F(9, 4)) == 1
    assert lambda_poly_eval(H1, UNIT_H, "1", 2, F(3)) == 3
    for frame in PRESETS:
        basis = ConstantBasis.for_frame(frame)
        for m in range(1, 6):
            assert lambda_poly_eval(frame, basis, "1", m, frame.base_point()) == 0


@pytest.mark.parametrize("frame", PRESETS, ids=PRESET_IDS)
def test_lambda_laws(frame):
    basis = ConstantBasis.for_frame(frame)
    q = frame.base_point()
    for m in range(1, 9):
        upper, lower = LambdaPoly(frame, basis, "1", m), LambdaPoly(frame, basis, "1", m - 1)
        assert upper(q) == 0
        for p in samples(frame):
            assert qderiv(frame, upper, p) == lower(p)


@given(h=st.sampled_from([F(1), F(1, 2), F(-3, 2)]), m=st.integers(0, 8),
       p=st.fractions(min_value=-20, max_value=20, max_denominator=7))
def test_lambda_h_frame_is_falling_factorial(h, m, p):
    frame = make_preset("h", h=h)
    assert lambda_poly_eval(frame, UNIT_H, "1", m, p) == h_lambda(h, m, p)


@given(q=st.sampled_from([F(2), F(3, 2), F(1, 3)]), m=st.integers(0, 8),
       p=st.fractions(min_value=-20, max_value=20, max_denominator=7))
def test_lambda_q_frame_is_q_binomial_product(q, m, p):
    frame = make_preset("q", q=q)
    assert lambda_poly_eval(frame, UNIT_Q, "1", m, p) == q_lambda(q, m, p)


def test_lambda_values_memoised_consistently():
    L = LambdaPoly(Q2, UNIT_Q, "1", 6)
    vals = L.values(F(7, 3))
    assert vals == [LambdaPoly(Q2, UNIT_Q, "1", m)(F(7, 3)) for m in range(7)]


@pytest.mark.parametrize("frame", PRESETS, ids=PRESET_IDS)
def test_lambda_degrees_and_independence(frame):
    basis = ConstantBasis.for_frame(frame)
    pts = samples(frame, 14, depth=7)
    for m in range(6):
        assert degree_of_function(frame, LambdaPoly(frame, basis, "1", m), pts, 6) == m
    rows = [LambdaPoly(frame, basis, "1", 6).values(p) for p in pts[:8]]
    assert sym_rank(rows) == 7


@pytest.mark.parametrize("frame", PRESETS, ids=PRESET_IDS)
def test_zeta_evaluation_matrix_nonsingular_on_orbit(frame):
    basis = ConstantBasis.for_frame(frame)
    n = 5
    nodes = OrbitGrid(frame, F(7, 3), n).nodes
    rows = [[ZetaPoly(frame, basis, "1", k)(x) for k in range(n + 1)] for x in nodes]
    assert sym_rank(rows) == n + 1


def test_degree_examples():
    pts = samples(Q2, 8, depth=4)
    assert degree_of_function(H1, ScalarFn.constant(5), samples(H1, 8), 3) == 0
    assert degree_of_function(H1, square, samples(H1, 8), 3) == 2
    assert degree_of_function(Q2, Polynomial([0, 0, 0, 1]), pts, 3) == 3
    assert degree_of_function(Q2, Polynomial([0, 0, 0, 0, 1]), pts, 3) is None
    assert degree_of_function(Q2, ScalarFn.constant(0), pts, 3) is None
    with pytest.raises(InsufficientSamples):
        degree_of_function(H1, square, samples(H1, 3), 3)
    with pytest.raises(DegreeExceeded, match="not a D-polynomial up to 2"):
        check_degree(Q2, Polynomial([0, 0, 0, 1]), pts, 2)


def test_coeff_extract_examples():
    pts = samples(H1, 8)
    assert coeff_extract(H1, UNIT_H, square, 2, pts) == {"1": [0, 1, 2]}
    assert coeff_extract(Q2, UNIT_Q, square, 2, samples(Q2, 8)) == {"1": [1, 3, 3]}
    assert coeff_extract(H1, UNIT_H, ScalarFn.constant(1), 3, pts) == {"1": [1, 0, 0, 0]}
    with pytest.raises(DegreeExceeded):
        coeff_extract(H1, UNIT_H, Polynomial([0, 0, 0, 1]), 2, pts)


@pytest.mark.parametrize("frame", PRESETS, ids=PRESET_IDS)
def test_coeff_extract_reconstructs(frame):
    rng = random.Random(11)
    basis = ConstantBasis.for_frame(frame)
    zetas = [ZetaPoly(frame, basis, "1", k) for k in range(5)]
    pts = samples(frame, 10, depth=5)
    for _ in range(5):
        coeffs = [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(5)]
        u = ScalarFn(lambda p: sum(c * z(p) for c, z in zip(coeffs, zetas)))
        assert coeff_extract(frame, basis, u, 4, pts)["1"] == coeffs


def frac(x):
    return x - (x.numerator // x.denominator)


def two_label_basis():
    # period-1 D-constants for h = 1, normalised at 0 and 1/2
    z1 = ScalarFn(lambda x: 1 - 2 * frac(x) if frac(x) <= F(1, 2) else 2 * frac(x) - 1, "z1")
    z2 = ScalarFn(lambda x: 1 - z1(x), "z2")
    return ConstantBasis((("a", z1, F(0)), ("b", z2, F(1, 2))))


def test_two_label_basis_is_normalised():
    basis = two_label_basis()
    basis.validate(H1, samples(H1, 6))
    bad = ConstantBasis((("a", ScalarFn.constant(1), F(0)), ("b", ScalarFn.constant(1), F(1, 2))))
    with pytest.raises(InvalidKernelBasis):
        bad.validate(H1, samples(H1, 6))


def test_coeff_extract_two_labels():
    basis = two_label_basis()
    rng = random.Random(2)
    pts = [F(i, 5) + F(1, 7) for i in range(12)]
    z = {s: [ZetaPoly(H1, basis, s, k) for k in range(4)] for s in ("a", "b")}
    for _ in range(4):
        want = {s: [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(4)] for s in ("a", "b")}
        u = ScalarFn(lambda p: sum(c * f(p) for s in want for c, f in zip(want[s], z[s])))
        assert coeff_extract(H1, basis, u, 3, pts) == want


def test_basis_rows_format():
    rows = basis_rows(Q2, UNIT_Q, "theta", 2, F(3))
    assert rows == [("theta", 0, "", "1"), ("theta", 1, "1", "2"), ("theta", 2, "2,1", "2")]
    with pytest.raises(ValueError):
        basis_rows(Q2, UNIT_Q, "bogus", 1, F(3))
