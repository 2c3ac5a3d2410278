import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from oracles import sym_rank
from qcalc import (
    BadShape,
    DimensionOverflow,
    InvalidKernelBasis,
    InvarianceFailure,
    LinOp,
    NotADirectSum,
    NotAnInitialOperator,
    NotAPolynomial,
    NotARightInverse,
    NotRightInvertible,
    OperatorTower,
    OperatorTriple,
    build_difference_instance,
    combine_inverses,
    family_member,
    initial_from_right,
    is_initial_operator,
    kernel_gradation,
    monomial_basis,
    poly_expand_matrix,
    right_from_initial,
    right_inverse,
    taylor_identity_residual,
)
from qcalc.matrix import in_span
from qcalc.suites import random_matrix


def fwd(N):
    return build_difference_instance("forward", N)


def stride(N, k=2):
    return build_difference_instance("stride", N, k)


def ones(n):
    return (F(1),) * n


def test_forward_instance_examples():
    assert fwd(4).entries == ((-1, 1, 0, 0), (0, -1, 1, 0), (0, 0, -1, 1))
    assert fwd(2).entries == ((-1, 1),)
    D = stride(6)
    assert D.shape == (4, 6) and D.rank() == 4 and len(D.nullspace()) == 2


@pytest.mark.parametrize("N,k", [(1, 1), (2, 2), (3, 5)])
def test_instance_bad_shape(N, k):
    with pytest.raises(BadShape):
        build_difference_instance("stride", N, k)


def test_right_inverse_examples():
    R = right_inverse(fwd(4))
    assert R.entries == ((0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1))
    assert right_inverse(LinOp.identity(3)).is_identity()
    D = stride(6)
    assert (D @ right_inverse(D)).is_identity()


def test_right_inverse_requires_full_row_rank():
    with pytest.raises(NotRightInvertible):
        right_inverse(LinOp.from_rows([[1, 1], [2, 2]]))


def test_initial_operator_examples():
    D = fwd(4)
    F_ = initial_from_right(D, right_inverse(D))
    x = (F(3), F(-1), F(5, 2), F(7))
    assert F_ @ x == (3, 3, 3, 3)
    M = LinOp.from_rows([[2, 1], [0, 1]])
    assert initial_from_right(M, M.inverse()).is_zero()
    S = stride(6)
    G = initial_from_right(S, right_inverse(S))
    assert G @ G == G and G.rank() == 2


def test_initial_rejects_non_inverse():
    with pytest.raises(NotARightInverse):
        initial_from_right(fwd(4), LinOp.zeros(4, 3))


def test_right_from_initial_examples():
    D = fwd(4)
    R = right_inverse(D)
    F_ = initial_from_right(D, R)
    assert right_from_initial(D, R, F_) == R
    M = LinOp.from_rows([[2, 1], [0, 1]])
    assert right_from_initial(M, M.inverse(), LinOp.zeros(2, 2)) == M.inverse()


def test_right_from_initial_independent_of_r_prime():
    rng = random.Random(3)
    for D in (fwd(5), stride(7), stride(9, 3)):
        R = right_inverse(D)
        F_ = initial_from_right(D, R)
        kernel = D.nullspace()
        for _ in range(5):
            # R' = R + (kernel columns) is another right inverse
            K = LinOp.from_columns([sum_scaled(kernel, rng) for _ in range(D.rows)], D.cols)
            R_prime = R + K
            assert (D @ R_prime).is_identity() and R_prime != R
            out = right_from_initial(D, R_prime, F_)
            assert out == right_from_initial(D, R, F_)
            assert (D @ out).is_identity() and (F_ @ out).is_zero()


def sum_scaled(vectors, rng):
    out = [F(0)] * len(vectors[0])
    for v in vectors:
        c = F(rng.randint(-5, 5), rng.randint(1, 4))
        out = [a + c * b for a, b in zip(out, v)]
    return out


def test_right_from_initial_rejects_non_projection():
    D = fwd(4)
    with pytest.raises(NotAnInitialOperator):
        right_from_initial(D, right_inverse(D), LinOp.identity(4))


@pytest.mark.parametrize("D", [fwd(4), fwd(7), stride(6), stride(10, 3)], ids=str)
def test_family_members(D):
    T = OperatorTriple.from_right(D)
    zero = LinOp.zeros(D.cols, D.rows)
    assert family_member(D, T.R, T.F, zero, "right") == T.R
    assert family_member(D, T.R, T.F, zero, "initial") == T.F
    rng = random.Random(D.cols)
    for _ in range(20):
        A = random_matrix(rng, D.cols, D.rows)
        assert (D @ family_member(D, T.R, T.F, A, "right")).is_identity()
        G = family_member(D, T.R, T.F, A, "initial")
        assert G @ G == G and is_initial_operator(D, G)
    with pytest.raises(BadShape):
        family_member(D, T.R, T.F, LinOp.zeros(D.rows, D.cols), "right")


def test_triple_contract():
    for D in (fwd(5), stride(8)):
        assert OperatorTriple.from_right(D).satisfies_contract()


def test_kernel_gradation_examples():
    assert kernel_gradation(fwd(5), 5).dims == (1, 2, 3, 4, 5)
    assert kernel_gradation(stride(6), 3).dims == (2, 4, 6)
    G = kernel_gradation(fwd(5), 5)
    assert G.degree_of([0] * 5) is None
    assert G.degree_of(ones(5)) == 0
    assert G.degree_of([0, 1, 4, 9, 16]) == 2
    with pytest.raises(ValueError):
        kernel_gradation(fwd(5), 0)


def test_gradation_level_beyond_bound():
    G = kernel_gradation(fwd(6), 2)
    with pytest.raises(NotAPolynomial):
        G.level_of([0, 1, 4, 9, 16, 25])


@pytest.mark.parametrize("D", [fwd(6), stride(8), stride(9, 3)], ids=str)
def test_gradation_nests_and_separates(D):
    G = kernel_gradation(D, 4)
    for m in range(2, 5):
        assert G.bases[m - 1][: len(G.bases[m - 2])] == G.bases[m - 2]
        for u in G.new_at(m):
            assert G.level_of(u) == m


@pytest.mark.parametrize("D", [fwd(7), stride(8), stride(10, 3)], ids=str)
def test_independence_of_one_vector_per_level(D):
    G = kernel_gradation(D, 3)
    picks = [G.new_at(m)[0] for m in range(1, 4) if G.new_at(m)]
    assert sym_rank(picks) == len(picks)


@pytest.mark.parametrize("D", [fwd(7), stride(8), stride(9, 3)], ids=str)
def test_right_inverse_not_nilpotent_on_polynomials(D):
    tower = OperatorTower(D)
    G = kernel_gradation(D, 1)
    for z in G.bases[0]:
        n = 0
        while tower.dim(n) > 0 and n <= 6:
            v = tower.R_pow(n) @ tower.restrict(z, n)
            assert any(x != 0 for x in v)
            n += 1


@pytest.mark.parametrize("D", [fwd(7), stride(8), stride(9, 3)], ids=str)
def test_gradation_levels_nonempty(D):
    tower = OperatorTower(D)
    k = D.cols - D.rows
    G = kernel_gradation(D, D.cols // k)
    z = G.bases[0][0]
    for m in range(1, D.cols // k + 1):
        assert G.degree_of(tower.R_pow(m - 1) @ tower.restrict(z, m - 1)) == m - 1
        assert G.new_at(m)


def test_taylor_identity_examples():
    assert taylor_identity_residual(OperatorTower(fwd(6)), 0).is_zero()
    assert taylor_identity_residual(OperatorTower(fwd(6)), 3).is_zero()
    assert taylor_identity_residual(OperatorTower(stride(8)), 2).is_zero()


@pytest.mark.parametrize("kind,k", [("forward", 1), ("stride", 2), ("stride", 3)])
def test_taylor_identity_all_sizes(kind, k):
    for N in range(k + 1, 11):
        for m in range(6):
            D = build_difference_instance(kind, N, k)
            assert taylor_identity_residual(D, m).is_zero(), (N, m)


def test_taylor_identity_square_operator():
    M = LinOp.from_rows([[1, 2], [0, 3]])
    assert taylor_identity_residual(OperatorTower(M), 4).is_zero()


def test_monomial_basis_examples():
    T = OperatorTower(fwd(6))
    vs = monomial_basis(T, [ones(6)], 2)
    assert len(vs) == 3 and sym_rank(vs) == 3 and vs[0] == ones(6)
    S = OperatorTower(stride(8))
    kernel = stride(8).nullspace()
    assert sym_rank(monomial_basis(S, kernel, 2)) == 6
    assert monomial_basis(S, kernel, 0) == [tuple(z) for z in kernel]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_dimension_formula_window(k):
    N = 9
    D = build_difference_instance("stride", N, k)
    tower = OperatorTower(D)
    kernel = D.nullspace()
    assert len(kernel) == k
    G = kernel_gradation(D, N)
    for n in range(N):
        if (n + 1) * k > N:
            with pytest.raises(DimensionOverflow):
                monomial_basis(tower, kernel, n)
            continue
        vs = monomial_basis(tower, kernel, n)
        assert sym_rank(vs) == (n + 1) * k
        # same span as ker D^(n+1)
        assert all(in_span(v, G.bases[n]) for v in vs)
        assert len(G.bases[n]) == len(vs)


def test_monomial_basis_rejects_bad_kernel():
    T = OperatorTower(fwd(5))
    with pytest.raises(InvalidKernelBasis):
        monomial_basis(T, [(0, 1, 2, 3, 4)], 1)
    with pytest.raises(InvalidKernelBasis):
        monomial_basis(OperatorTower(stride(6)), [ones(6)], 1)


def reconstruct(tower, zs):
    total = [F(0)] * tower.dim(0)
    for k, z in enumerate(zs):
        total = [a + b for a, b in zip(total, tower.R_pow(k) @ z)]
    return tuple(total)


def test_poly_expand_examples():
    T = OperatorTower(fwd(5))
    u = (0, 1, 4, 9, 16)
    zs = poly_expand_matrix(T, u, 2)
    assert zs[0] == (0,) * 5 and zs[1] == (1,) * 4 and zs[2] == (2,) * 3
    assert reconstruct(T, zs) == u
    assert poly_expand_matrix(T, ones(5), 0) == [ones(5)]
    S = OperatorTower(stride(8))
    ramp = (0, 10, 1, 11, 2, 12, 3, 13)
    assert reconstruct(S, poly_expand_matrix(S, ramp, 1)) == ramp
    with pytest.raises(NotAPolynomial):
        poly_expand_matrix(T, u, 1)


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=4, max_size=4),
       st.sampled_from([1, 2]))
def test_poly_expand_round_trip(coeffs, k):
    N = 10
    tower = OperatorTower(build_difference_instance("stride", N, k))
    u = tuple(sum(c * (i // k) ** j for j, c in enumerate(coeffs)) + (i % k) for i in range(N))
    zs = poly_expand_matrix(tower, u, 3)
    D = tower.top.D
    for level, z in enumerate(zs):
        assert all(x == 0 for x in tower.level(level).D @ z)
    assert reconstruct(tower, zs) == u
    assert D.cols == N


def test_combine_identical_inverses():
    D = stride(8)
    R = right_inverse(D)
    P = kernel_gradation(D, 3).bases[2]
    Q = complement(P, 8)
    T = combine_inverses(D, R, R, P, Q)
    assert T.R == R and T.F == initial_from_right(D, R)


def test_combine_whole_space_polynomial_block():
    D = fwd(4)
    R1 = right_inverse(D)
    P = monomial_basis(OperatorTower(D), [ones(4)], 3)
    R2 = family_member(D, R1, initial_from_right(D, R1), random_matrix(random.Random(1), 4, 3))
    assert combine_inverses(D, R1, R2, P, []).R == R1


def complement(P, n):
    out = []
    for i in range(n):
        e = tuple(F(int(i == j)) for j in range(n))
        if not in_span(e, list(P) + out):
            out.append(e)
    return out


def test_combine_distinct_inverses_on_stride():
    D = stride(8)
    R1 = right_inverse(D)
    F1 = initial_from_right(D, R1)
    R2 = family_member(D, R1, F1, random_matrix(random.Random(5), 8, 6))
    assert R1 != R2
    P = kernel_gradation(D, 3).bases[2]
    Q = complement(P, 8)
    T = combine_inverses(D, R1, R2, P, Q)
    assert (D @ T.R).is_identity()
    assert T.F @ T.F == T.F and is_initial_operator(D, T.F)
    for p in P:
        y = D @ p
        assert T.R @ y == R1 @ y
    for q in Q:
        y = D @ q
        assert T.R @ y == R2 @ y


def test_combine_errors():
    D = stride(8)
    R = right_inverse(D)
    P = list(kernel_gradation(D, 3).bases[2])
    with pytest.raises(NotADirectSum):
        combine_inverses(D, R, R, P, P[:2])
    with pytest.raises(NotADirectSum):
        combine_inverses(D, R, R, P, [])
    # a block missing ker D
    E = [tuple(F(int(i == j)) for j in range(8)) for i in range(8)]
    with pytest.raises(InvarianceFailure):
        combine_inverses(D, R, R, E[2:4], E[:2] + E[4:])
