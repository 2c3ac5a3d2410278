"""Property suites behind ``qcalc verify``.

Each suite returns a list of CheckResult entries, sorted by name, whose
``detail`` carries the worst residual seen.  Random cases come from a seeded
``random.Random`` so reports are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .algebra import (
    OperatorTower,
    build_difference_instance,
    family_member,
    is_initial_operator,
    monomial_basis,
    taylor_identity_residual,
)
from .basis import ConstantBasis, LambdaPoly, ZetaPoly, theta_descent_residual
from .derivative import ScalarFn, default_samples, leibniz_residual, qderiv
from .errors import DimensionOverflow
from .expr import Polynomial
from .matrix import LinOp
from .scalars import format_scalar, is_zero
from .taylor import OrbitGrid, operator_taylor_check, taylor_expand, taylor_reconstruct
from .tension import CheckResult, QuantumFrame, validate_frame

SUITES = ("tension", "leibniz", "descent", "lambda", "algebra", "taylor")


@dataclass
class SuiteOptions:
    max_order: int = 8
    samples: int = 12
    cases: int = 50
    seed: int = 0
    instance: str = "forward"
    n: int = 6
    m: int = 3
    stride: int = 2
    max_degree: int = 6


def random_rational(rng: random.Random, num: int = 9, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_polynomial(rng: random.Random, max_degree: int = 8) -> Polynomial:
    return Polynomial([random_rational(rng) for _ in range(rng.randint(0, max_degree) + 1)])


def random_matrix(rng: random.Random, rows: int, cols: int) -> LinOp:
    return LinOp.from_rows([[random_rational(rng) for _ in range(cols)] for _ in range(rows)], cols)


def _worst(residuals) -> tuple:
    residuals = list(residuals)
    bad = [r for r in residuals if not is_zero(r)]
    worst = max(residuals, key=abs) if residuals else 0
    return not bad, f"{len(residuals)} cases, max |residual| = {format_scalar(abs(worst))}"


def _check(name: str, residuals) -> CheckResult:
    ok, detail = _worst(residuals)
    return CheckResult(name, ok, detail)


def tension_suite(frame: QuantumFrame, opts: SuiteOptions) -> list:
    samples = default_samples(frame, opts.samples)
    return validate_frame(frame, samples).checks


def leibniz_suite(frame: QuantumFrame, opts: SuiteOptions) -> list:
    rng = random.Random(opts.seed)
    samples = default_samples(frame, opts.samples)
    res = []
    for _ in range(opts.cases):
        f, g = random_polynomial(rng), random_polynomial(rng)
        res.append(leibniz_residual(frame, f, g, rng.choice(samples)))
    return [_check("leibniz", res)]


def descent_suite(frame: QuantumFrame, opts: SuiteOptions) -> list:
    samples = default_samples(frame, opts.samples)
    q = frame.base_point()
    basis = ConstantBasis.for_frame(frame)
    label = basis.labels[0]
    theta_res, zeta_res = [], []
    for n in range(1, opts.max_order + 1):
        upper, lower = ZetaPoly(frame, basis, label, n), ZetaPoly(frame, basis, label, n - 1)
        for p in samples:
            theta_res.append(theta_descent_residual(frame, q, n, p))
            zeta_res.append(qderiv(frame, upper, p) - lower(p))
    return [_check("theta_descent", theta_res), _check("zeta_descent", zeta_res)]


def lambda_suite(frame: QuantumFrame, opts: SuiteOptions) -> list:
    samples = default_samples(frame, opts.samples)
    basis = ConstantBasis.for_frame(frame)
    label = basis.labels[0]
    q = basis.point(label)
    vanish, descent = [], []
    for m in range(1, opts.max_order + 1):
        upper, lower = LambdaPoly(frame, basis, label, m), LambdaPoly(frame, basis, label, m - 1)
        vanish.append(upper(q))
        descent.extend(qderiv(frame, upper, p) - lower(p) for p in samples)
    return [_check("lambda_descent", descent), _check("lambda_vanishes_at_base", vanish)]


def algebra_suite(opts: SuiteOptions) -> list:
    rng = random.Random(opts.seed)
    k = 1 if opts.instance == "forward" else opts.stride
    D = build_difference_instance(opts.instance, opts.n, k)
    tower = OperatorTower(D)
    T = tower.top
    out = []
    residual = taylor_identity_residual(tower, opts.m)
    out.append(CheckResult("taylor_identity", residual.is_zero(),
                           f"m={opts.m}, nonzero entries: "
                           f"{sum(a != 0 for r in residual.entries for a in r)}"))
    out.append(CheckResult("right_inverse", (D @ T.R).is_identity()))
    out.append(CheckResult("initial_operator", is_initial_operator(D, T.F) and (T.F @ T.R).is_zero()))
    rights, initials = [], []
    for _ in range(20):
        A = random_matrix(rng, D.cols, D.rows)
        rights.append((D @ family_member(D, T.R, T.F, A, "right")).is_identity())
        G = family_member(D, T.R, T.F, A, "initial")
        initials.append(is_initial_operator(D, G))
    out.append(CheckResult("right_family", all(rights), f"{len(rights)} random A"))
    out.append(CheckResult("initial_family", all(initials), f"{len(initials)} random A"))
    kernel = D.nullspace()
    dim_ker = len(kernel)
    ok = True
    for n in range(D.cols):
        try:
            vs = monomial_basis(tower, kernel, n)
        except DimensionOverflow:
            ok = ok and (n + 1) * dim_ker > D.cols
            continue
        ok = ok and LinOp.from_columns(vs, D.cols).rank() == (n + 1) * dim_ker
    out.append(CheckResult("dimension_formula", ok, f"dim ker D = {dim_ker}"))
    return sorted(out, key=lambda c: c.name)


def taylor_suite(frame: QuantumFrame, opts: SuiteOptions) -> list:
    rng = random.Random(opts.seed)
    basis = ConstantBasis.for_frame(frame)
    label = basis.labels[0]
    q = basis.point(label)
    lambdas = [LambdaPoly(frame, basis, label, m) for m in range(opts.max_degree + 1)]
    nodes = OrbitGrid(frame, q, 11).nodes
    samples = default_samples(frame, 2 * (opts.max_degree + 2), depth=opts.max_degree + 1)
    recon, coeff = [], []
    for _ in range(opts.cases):
        deg = rng.randint(0, opts.max_degree)
        cs = [random_rational(rng) for _ in range(deg + 1)]
        W = _combination(cs, lambdas)
        exp = taylor_expand(frame, basis, W, deg, samples=samples)
        coeff.extend(a - b for a, b in zip(exp.lambdas(), cs))
        recon.extend(taylor_reconstruct(exp, basis, x) - W(x) for x in nodes)
    grid = OrbitGrid(frame, q, 12)
    op = [operator_taylor_check(frame, grid, random_polynomial(rng, 5), m, j)
          for m in range(4) for j in (0, 3, 7)]
    return [_check("expansion_coefficients", coeff), _check("operator_taylor", op),
            _check("reconstruction", recon)]


def _combination(cs, polys) -> ScalarFn:
    def W(p):
        values = polys[len(cs) - 1].values(p)
        return sum(c * v for c, v in zip(cs, values))
    return ScalarFn(W, "W")


def run_suite(name: str, frame: Optional[QuantumFrame], opts: SuiteOptions) -> list:
    if name == "algebra":
        return algebra_suite(opts)
    runner: Callable = {
        "tension": tension_suite,
        "leibniz": leibniz_suite,
        "descent": descent_suite,
        "lambda": lambda_suite,
        "taylor": taylor_suite,
    }[name]
    return runner(frame, opts)

