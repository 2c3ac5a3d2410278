"""Right inverses on orbit lattices and the (sigma, tau)-Taylor expansion.

An orbit grid starts at ``sigma(anchor)`` and steps with mu = tau . sigma^-1.
Chain 0 holds the nodes x_j; chain l holds sigma^-l(x_j).  Because sigma and
tau commute, tau maps chain l+1 index j onto chain l index j+1 and sigma maps
it onto chain l index j, so D takes functions on chain l to chain l+1 and the
telescoping right inverse takes them back.  When sigma is the identity all
chains coincide.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .basis import ConstantBasis, LambdaPoly, QuantumInt, check_degree
from .derivative import Fn, ScalarFn, default_samples, qderiv_all
from .errors import (
    CommutationFailure,
    GridDegenerate,
    GridExhausted,
    MultiLabelUnsupported,
    NoInverse,
)
from .scalars import Scalar, format_scalar, is_zero
from .tension import Point, QuantumFrame


class OrbitGrid:
    """Nodes x_j = mu^j(sigma(anchor)), j = 0..J, with their sigma-preimage chains."""

    def __init__(self, frame: QuantumFrame, anchor: Point, J: int):
        if J < 1:
            raise GridExhausted("an orbit grid needs J >= 1")
        if not frame.sigma.invertible:
            raise NoInverse(f"orbit grids need sigma^-1 in {frame.name}")
        self.frame, self.anchor, self.J = frame, anchor, J
        sigma, tau = frame.sigma, frame.tau
        # x_j = tau^j sigma^(1-j) (anchor) = mu^j (sigma(anchor))
        nodes = tuple(tau.power(j, sigma.power(1 - j, anchor)) for j in range(J + 1))
        for a, b in zip(nodes, nodes[1:]):
            if is_zero(frame.theta(b, a)):
                raise GridDegenerate(f"consecutive nodes {a} and {b} have zero tension")
        self._chains = [nodes]

    @property
    def nodes(self) -> tuple:
        return self._chains[0]

    @property
    def preimages(self) -> tuple:
        """p_j = sigma^-1(x_j) for j < J; tau(p_j) = x_(j+1), sigma(p_j) = x_j."""
        return self.chain(1)

    def chain(self, level: int) -> tuple:
        """sigma^-level of the nodes, truncated to J - level + 1 points."""
        if level > self.J:
            raise GridExhausted(f"grid with J={self.J} has no chain {level}")
        frame = self.frame
        while len(self._chains) <= level:
            upper = self._chains[-1]
            lower = tuple(frame.sigma.power(-1, x) for x in upper[:-1])
            for j, p in enumerate(lower):
                frame.check_domain(p)
                if frame.sigma(p) != upper[j] or frame.tau(p) != upper[j + 1]:
                    raise CommutationFailure(f"grid point {p} does not map onto its neighbours")
            self._chains.append(lower)
        return self._chains[level]

    def tabulate(self, values: Sequence[Scalar], level: int = 0, label: str = "grid") -> ScalarFn:
        return ScalarFn.tabulated(dict(zip(self.chain(level), values)), label, GridExhausted)

    # list-level operators ---------------------------------------------------

    def _D(self, g: Sequence[Scalar], level: int) -> list:
        pts = self.chain(level)
        th = self.frame.theta
        return [(g[j + 1] - g[j]) / th(pts[j + 1], pts[j]) for j in range(len(g) - 1)]

    def _R(self, g: Sequence[Scalar], level: int) -> list:
        """Values on chain ``level`` from values on chain ``level + 1``."""
        pts = self.chain(level)
        th = self.frame.theta
        out = [0 * g[0] if g else Fraction(0)]
        for j, v in enumerate(g):
            out.append(out[-1] + th(pts[j + 1], pts[j]) * v)
        return out

    def _F(self, g: Sequence[Scalar], level: int) -> list:
        rdg = self._R(self._D(g, level), level)
        return [a - b for a, b in zip(g, rdg)]

    def sample(self, f: Fn, level: int) -> list:
        return [f(x) for x in self.chain(level)]


def orbit_right_inverse(frame: QuantumFrame, grid: OrbitGrid, f: Fn) -> ScalarFn:
    """Telescoping sum anchored at zero: (Rf)(x_0) = 0 and
    (Rf)(x_(j+1)) = (Rf)(x_j) + theta(x_(j+1), x_j) f(p_j)."""
    _same_frame(frame, grid)
    return grid.tabulate(grid._R(grid.sample(f, 1), 0), 0, "Rf")


def orbit_initial(frame: QuantumFrame, grid: OrbitGrid, f: Fn) -> ScalarFn:
    """Ff = f - R(Df) on the nodes."""
    _same_frame(frame, grid)
    return grid.tabulate(grid._F(grid.sample(f, 0), 0), 0, "Ff")


def operator_taylor_check(frame: QuantumFrame, grid: OrbitGrid, f: Fn, m: int,
                          p_index: int) -> Scalar:
    """f(x) - sum_{k<=m} (R^k F D^k f)(x) - (R^(m+1) D^(m+1) f)(x) at node x_(p_index)."""
    _same_frame(frame, grid)
    if m + 1 > grid.J:
        raise GridExhausted(f"m={m} needs J >= {m + 1}, grid has J={grid.J}")
    if not 0 <= p_index <= grid.J:
        raise GridExhausted(f"node index {p_index} outside 0..{grid.J}")
    derivs = [grid.sample(f, 0)]
    for k in range(m + 1):
        derivs.append(grid._D(derivs[-1], k))

    def lift(g, k):
        for level in reversed(range(k)):
            g = grid._R(g, level)
        return g

    total = derivs[0][p_index]
    for k in range(m + 1):
        total -= lift(grid._F(derivs[k], k), k)[p_index]
    return total - lift(derivs[m + 1], m + 1)[p_index]


def _same_frame(frame, grid):
    if grid.frame is not frame:
        raise ValueError("grid was built for a different frame")


# ---------------------------------------------------------------------------
# Taylor expansion of D-polynomials

@dataclass(frozen=True)
class TaylorExpansion:
    frame: QuantumFrame
    base_points: tuple      # ((label, q_s), ...)
    coefficients: tuple     # ((label, (lambda_0, ..., lambda_n)), ...)
    degree: int

    def lambdas(self, label: Optional[str] = None) -> tuple:
        if label is None:
            return self.coefficients[0][1]
        return dict(self.coefficients)[label]

    def rows(self) -> list:
        """(k, s, lambda, lambda / [k]!) rows for the expansion report."""
        qi = QuantumInt.for_frame(self.frame)
        out = []
        for label, lams in self.coefficients:
            for k, lam in enumerate(lams):
                out.append((k, label, lam, lam / qi.factorial(k)))
        return out

    def to_tsv(self) -> str:
        lines = ["k\ts\tlambda\tlambda_normalized"]
        lines += [f"{k}\t{s}\t{format_scalar(a)}\t{format_scalar(b)}" for k, s, a, b in self.rows()]
        return "\n".join(lines) + "\n"


def taylor_expand(frame: QuantumFrame, basis: ConstantBasis, W: Fn, n: int,
                  components: Optional[dict] = None,
                  samples: Optional[Sequence[Point]] = None) -> TaylorExpansion:
    """lambda_(k,s) = D^k W_s(q_s) for k = 0..n.

    With a single label W_s is W itself.  Several labels need the split
    W = sum_s W_s in ``components``: the projection onto each label is not
    computable from point evaluations.
    """
    labels = basis.labels
    if components is None:
        if len(labels) != 1:
            raise MultiLabelUnsupported("several labels need explicit components W_s")
        components = {labels[0]: W}
    if samples is None:
        samples = default_samples(frame, 2 * (n + 2), depth=n + 1)
    coeffs = []
    for label in labels:
        Ws = components.get(label)
        if Ws is None:
            coeffs.append((label, tuple(Fraction(0) for _ in range(n + 1))))
            continue
        check_degree(frame, Ws, samples, n)
        coeffs.append((label, tuple(qderiv_all(frame, Ws, n, basis.point(label)))))
    if len(labels) > 1:
        check_degree(frame, W, samples, n)
    return TaylorExpansion(frame, tuple((lab, basis.point(lab)) for lab in labels),
                           tuple(coeffs), n)


def taylor_reconstruct(exp: TaylorExpansion, basis: ConstantBasis, p: Point) -> Scalar:
    """sum_s sum_k lambda_(k,s) Lambda_s^(k)(p)."""
    total = 0
    for label, lams in exp.coefficients:
        values = LambdaPoly(exp.frame, basis, label, exp.degree).values(p)
        total += sum(lam * v for lam, v in zip(lams, values))
    return total


def classical_taylor_crosscheck(W: Sequence[Scalar], a: Scalar, m: int) -> list:
    """Classical Taylor coefficients W^(k)(a)/k!, k = 0..m, by repeated synthetic division.

    ``W`` lists coefficients in increasing degree.
    """
    coeffs = [Fraction(c) for c in W]
    out = []
    for _ in range(m + 1):
        if not coeffs:
            out.append(Fraction(0))
            continue
        # divide by (x - a): Horner from the top; the remainder is the value at a
        acc = Fraction(0)
        quotient = []
        for c in reversed(coeffs):
            acc = acc * a + c
            quotient.append(acc)
        out.append(quotient.pop())
        coeffs = list(reversed(quotient))
    return out
