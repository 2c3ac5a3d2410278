"""Quantum integers, factorials and the three D-polynomial bases.

``ThetaPoly`` is the product basis built on one base point, ``ZetaPoly`` its
factorial-normalised version twisted by a D-constant, and ``LambdaPoly`` the
interpolation basis that vanishes at the base point.  All are plain callables
and can be fed to :func:`qcalc.derivative.qderiv`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .derivative import Fn, ScalarFn, qderiv, qderiv_all
from .errors import (
    DegreeExceeded,
    InsufficientSamples,
    InvalidKernelBasis,
    InvalidParams,
    NoInverse,
    ZeroFactor,
)
from .scalars import Scalar, format_scalar, is_zero, to_scalar
from .tension import Point, QuantumFrame


class QuantumInt:
    """[n] = sum_{k=1}^{n} t^(n-k) s^(k-1), memoised, with [0] = 0."""

    def __init__(self, t: Scalar, s: Scalar):
        self.t, self.s = to_scalar(t), to_scalar(s)
        self._memo = {0: 0 * self.t}
        self._fact = {0: 1 + 0 * self.t}

    @classmethod
    def for_frame(cls, frame: QuantumFrame) -> "QuantumInt":
        if frame.s is None or frame.t is None:
            raise InvalidParams(f"{frame.name} does not declare homogeneity coefficients s, t")
        return cls(frame.t, frame.s)

    def __call__(self, n: int) -> Scalar:
        if n < 0:
            raise ValueError("quantum integers are defined for n >= 0")
        if n not in self._memo:
            t, s = self.t, self.s
            self._memo[n] = sum(t ** (n - k) * s ** (k - 1) for k in range(1, n + 1))
        return self._memo[n]

    def factorial(self, n: int) -> Scalar:
        if n not in self._fact:
            prev = self.factorial(n - 1)
            q = self(n)
            if is_zero(q):
                raise ZeroFactor(f"[{n}] = 0, so [{n}]! vanishes")
            self._fact[n] = q * prev
        return self._fact[n]


def quantum_int(q: QuantumInt, n: int) -> Scalar:
    return q(n)


def quantum_factorial(q: QuantumInt, n: int) -> Scalar:
    return q.factorial(n)


@dataclass(frozen=True)
class ConstantBasis:
    """Labelled D-constants zeta_s with base points q_s.

    Expected normalisation: zeta_s(q_t) = 1 if s == t else 0.
    """

    entries: tuple

    @classmethod
    def unit(cls, q: Point, label: str = "1") -> "ConstantBasis":
        """The single constant 1 based at ``q``; normalised automatically."""
        return cls(((label, ScalarFn.constant(1), q),))

    @classmethod
    def for_frame(cls, frame: QuantumFrame) -> "ConstantBasis":
        return cls.unit(frame.base_point(), frame.base_points[0][0])

    @property
    def labels(self) -> list:
        return [lab for lab, _, _ in self.entries]

    def zeta(self, label: str) -> Fn:
        return self._entry(label)[1]

    def point(self, label: str) -> Point:
        return self._entry(label)[2]

    def _entry(self, label):
        for e in self.entries:
            if e[0] == label:
                return e
        raise KeyError(label)

    def validate(self, frame: QuantumFrame, samples: Sequence[Point]) -> None:
        """Raise InvalidKernelBasis unless normalised and annihilated by D on samples."""
        for s, zeta_s, _ in self.entries:
            for t, _, q_t in self.entries:
                want = 1 if s == t else 0
                if zeta_s(q_t) != want:
                    raise InvalidKernelBasis(f"zeta_{s}(q_{t}) = {zeta_s(q_t)}, expected {want}")
            for p in samples:
                if frame.admissible(p) and not is_zero(qderiv(frame, zeta_s, p)):
                    raise InvalidKernelBasis(f"D zeta_{s} != 0 at {p}")


# ---------------------------------------------------------------------------
# basis polynomials

class BasisPolynomial:
    family = "?"

    def __init__(self, frame: QuantumFrame, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        self.frame = frame
        self.order = order

    def __call__(self, p: Point) -> Scalar:
        raise NotImplementedError

    @property
    def nodes(self) -> tuple:
        return ()

    def __repr__(self):
        return f"{type(self).__name__}(order={self.order})"


class ThetaPoly(BasisPolynomial):
    """theta_q^(n)(p) = prod_{k=1}^{n} theta(p, tau^(n-k) sigma^(k-1) q)."""

    family = "theta"

    def __init__(self, frame: QuantumFrame, q: Point, n: int):
        super().__init__(frame, n)
        self.q = q
        nodes = []
        for k in range(1, n + 1):
            x = frame.tau.power(n - k, frame.sigma.power(k - 1, q))
            frame.check_domain(x)
            nodes.append(x)
        self._nodes = tuple(nodes)

    @property
    def nodes(self) -> tuple:
        return self._nodes

    def __call__(self, p: Point) -> Scalar:
        th = self.frame.theta
        out = 1
        for x in self._nodes:
            out = out * th(p, x)
        return out


def theta_poly_eval(frame: QuantumFrame, q: Point, n: int, p: Point) -> Scalar:
    return ThetaPoly(frame, q, n)(p)


def theta_descent_residual(frame: QuantumFrame, q: Point, n: int, p: Point) -> Scalar:
    """D theta_q^(n)(p) - [n] theta_q^(n-1)(p); zero for commuting homogeneous frames."""
    if n < 1:
        raise ValueError("descent is stated for n >= 1")
    qi = QuantumInt.for_frame(frame)
    return qderiv(frame, ThetaPoly(frame, q, n), p) - qi(n) * ThetaPoly(frame, q, n - 1)(p)


def _sigma_inverse_power(frame: QuantumFrame, k: int) -> Callable[[Point], Point]:
    if k == 0 or frame.sigma.is_identity:
        return lambda p: p
    if frame.sigma.inverse is None:
        raise NoInverse(f"zeta polynomials of order {k} need sigma^-1 in {frame.name}")
    return lambda p: frame.sigma.power(-k, p)


class ZetaPoly(BasisPolynomial):
    """zeta^(k) = (zeta_s . sigma^-k) * theta_{q_s}^(k) / [k]!."""

    family = "zeta"

    def __init__(self, frame: QuantumFrame, basis: ConstantBasis, label: str, k: int):
        super().__init__(frame, k)
        self.label = label
        self.zeta = basis.zeta(label)
        self.q = basis.point(label)
        self.theta = ThetaPoly(frame, self.q, k)
        self._shift = _sigma_inverse_power(frame, k)
        self._scale = 1 / QuantumInt.for_frame(frame).factorial(k)

    @property
    def nodes(self) -> tuple:
        return self.theta.nodes

    def __call__(self, p: Point) -> Scalar:
        return self._scale * self.zeta(self._shift(p)) * self.theta(p)


def zeta_poly_eval(frame: QuantumFrame, basis: ConstantBasis, s: str, k: int, p: Point) -> Scalar:
    return ZetaPoly(frame, basis, s, k)(p)


class LambdaPoly(BasisPolynomial):
    """Interpolation basis: Lambda^(0) = zeta_s and

    Lambda^(m) = zeta^(m) - sum_{i<m} zeta^(m-i)(q_s) Lambda^(i),

    so that Lambda^(m)(q_s) = 0 for m >= 1 and D Lambda^(m) = Lambda^(m-1).
    The recursion coefficients zeta^(j)(q_s) are computed once per evaluator.
    """

    family = "lambda"

    def __init__(self, frame: QuantumFrame, basis: ConstantBasis, label: str, m: int):
        super().__init__(frame, m)
        self.label = label
        self.q = basis.point(label)
        self.zetas = [ZetaPoly(frame, basis, label, k) for k in range(m + 1)]
        self.coeffs = [None] + [z(self.q) for z in self.zetas[1:]]

    @property
    def nodes(self) -> tuple:
        return self.zetas[-1].nodes

    def values(self, p: Point) -> list:
        """[Lambda^(0)(p), ..., Lambda^(m)(p)]."""
        zs = [z(p) for z in self.zetas]
        out = [zs[0]]
        for m in range(1, self.order + 1):
            acc = zs[m]
            for i in range(m):
                acc = acc - self.coeffs[m - i] * out[i]
            out.append(acc)
        return out

    def __call__(self, p: Point) -> Scalar:
        return self.values(p)[-1]


def lambda_poly_eval(frame: QuantumFrame, basis: ConstantBasis, s: str, m: int, p: Point) -> Scalar:
    return LambdaPoly(frame, basis, s, m)(p)


# ---------------------------------------------------------------------------
# degrees and coefficients

def degree_of_function(frame: QuantumFrame, f: Fn, samples: Sequence[Point],
                       n_max: int) -> Optional[int]:
    """Smallest m <= n_max with D^(m+1) f = 0 on every sample, else None.

    The zero function has no degree and also gives None.  Sampling can only
    refute an identity, so at least 2*(n_max+1) samples are demanded.
    """
    if len(samples) < 2 * (n_max + 1):
        raise InsufficientSamples(f"need {2 * (n_max + 1)} samples, got {len(samples)}")
    derivs = [qderiv_all(frame, f, n_max + 1, p) for p in samples]
    if all(is_zero(d[0]) for d in derivs):
        return None
    for m in range(n_max + 1):
        if all(is_zero(d[m + 1], d[0]) for d in derivs):
            return m
    return None


def check_degree(frame: QuantumFrame, f: Fn, samples: Sequence[Point], n: int) -> None:
    """Raise DegreeExceeded unless D^(n+1) f vanishes on every sample."""
    for p in samples:
        d = qderiv_all(frame, f, n + 1, p)
        if not is_zero(d[-1], d[0]):
            raise DegreeExceeded(f"not a D-polynomial up to {n}: D^{n + 1} f({p}) = {d[-1]}")


def coeff_extract(frame: QuantumFrame, basis: ConstantBasis, u: Fn, k: int,
                  samples: Sequence[Point]) -> dict:
    """Coefficients a[s][m] with u = sum_{m,s} a[s][m] zeta_s^(m).

    Top coefficients are D^k u(q_s); lower ones subtract the known higher-order
    contributions evaluated at q_s.  With several labels the zeta^(j) of label
    t is built on its own base point q_t and evaluated at q_s, which is what
    applying D^m to the expansion produces.
    """
    check_degree(frame, u, samples, k)
    labels = basis.labels
    derivs = {s: qderiv_all(frame, u, k, basis.point(s)) for s in labels}
    zetas = {t: [ZetaPoly(frame, basis, t, j) for j in range(k + 1)] for t in labels}
    a = {s: [None] * (k + 1) for s in labels}
    for m in range(k, -1, -1):
        for s in labels:
            qs = basis.point(s)
            acc = derivs[s][m]
            for j in range(1, k - m + 1):
                for t in labels:
                    acc = acc - a[t][m + j] * zetas[t][j](qs)
            a[s][m] = acc
    return a


def basis_rows(frame: QuantumFrame, basis: ConstantBasis, family: str, max_order: int,
               p: Point, label: Optional[str] = None) -> list:
    """Rows (family, order, node_points, value_at_p) for the TSV dump."""
    label = basis.labels[0] if label is None else label
    q = basis.point(label)
    rows = []
    for n in range(max_order + 1):
        if family == "theta":
            poly = ThetaPoly(frame, q, n)
        elif family == "zeta":
            poly = ZetaPoly(frame, basis, label, n)
        elif family == "lambda":
            poly = LambdaPoly(frame, basis, label, n)
        else:
            raise ValueError(f"unknown basis family {family!r}")
        nodes = ",".join(format_scalar(x) for x in poly.nodes)
        rows.append((family, n, nodes, format_scalar(poly(p))))
    return rows
