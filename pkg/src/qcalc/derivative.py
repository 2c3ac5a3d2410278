"""The (sigma, tau)-quantum difference and derivative, plus preset calculi."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, Sequence

from .errors import CommutationFailure, DomainError, InvalidParams, NotInKernel, ZeroTension
from .scalars import Scalar, is_zero, to_scalar
from .tension import Point, QuantumFrame, ShiftMap, TensionFn

Fn = Callable[[Point], Scalar]


@dataclass(frozen=True)
class ScalarFn:
    """A black-box real function on points, with pointwise arithmetic."""

    evaluator: Fn
    label: str = "f"

    def __call__(self, p: Point) -> Scalar:
        return self.evaluator(p)

    def __repr__(self) -> str:
        return f"ScalarFn({self.label})"

    def __add__(self, other):
        g = _lift(other)
        return ScalarFn(lambda p: self(p) + g(p), f"({self.label} + {_name(other)})")

    __radd__ = __add__

    def __sub__(self, other):
        g = _lift(other)
        return ScalarFn(lambda p: self(p) - g(p), f"({self.label} - {_name(other)})")

    def __rsub__(self, other):
        g = _lift(other)
        return ScalarFn(lambda p: g(p) - self(p), f"({_name(other)} - {self.label})")

    def __neg__(self):
        return ScalarFn(lambda p: -self(p), f"-{self.label}")

    def __mul__(self, other):
        g = _lift(other)
        return ScalarFn(lambda p: self(p) * g(p), f"{self.label}*{_name(other)}")

    __rmul__ = __mul__

    def compose(self, rho: Callable[[Point], Point]) -> "ScalarFn":
        return ScalarFn(lambda p: self(rho(p)), f"{self.label}.{getattr(rho, 'name', 'rho')}")

    @classmethod
    def constant(cls, c: Scalar) -> "ScalarFn":
        c = to_scalar(c)
        return cls(lambda p: c, f"const({c})")

    @classmethod
    def identity(cls) -> "ScalarFn":
        return cls(lambda p: p, "e")

    @classmethod
    def power(cls, n: int) -> "ScalarFn":
        return cls(lambda p: p ** n, f"e^{n}")

    @classmethod
    def tabulated(cls, table: dict, label: str = "table",
                  missing: type = DomainError) -> "ScalarFn":
        values = dict(table)

        def lookup(p):
            try:
                return values[p]
            except KeyError:
                raise missing(f"{label} is not tabulated at {p!r}") from None

        return cls(lookup, label)


def _lift(g: Any) -> Fn:
    if callable(g):
        return g
    return lambda p: g


def _name(g: Any) -> str:
    return getattr(g, "label", None) or str(g)


# ---------------------------------------------------------------------------
# presets

KINDS = ("h", "q", "h_symmetric", "q_symmetric", "affine", "custom")


@dataclass(frozen=True)
class FrameKind:
    """Tag plus affine parameters: tau(x) = q*x + h, sigma(x) = q'*x + h'."""

    tag: str
    h: Optional[Scalar] = None
    q: Optional[Scalar] = None
    h_prime: Optional[Scalar] = None
    q_prime: Optional[Scalar] = None

    def params(self) -> dict:
        return {k: v for k, v in (("h", self.h), ("q", self.q),
                                  ("h'", self.h_prime), ("q'", self.q_prime)) if v is not None}


def _need(kind: FrameKind, name: str) -> Scalar:
    value = getattr(kind, name)
    if value is None:
        raise InvalidParams(f"{kind.tag} calculus needs parameter {name}")
    return to_scalar(value)


def make_preset(kind: FrameKind | str, base_points: Optional[Sequence] = None,
                **params) -> QuantumFrame:
    """Build one of the standard calculi with theta(p1, p2) = p1 - p2.

    ``kind`` is a FrameKind or a tag string with parameters as keywords,
    e.g. ``make_preset("q", q=2)``.
    """
    if isinstance(kind, str):
        kind = FrameKind(kind, **params)
    tag = kind.tag
    if tag == "h":
        h = _need(kind, "h")
        if h == 0:
            raise InvalidParams("h-calculus needs h != 0")
        sigma, tau = ShiftMap.identity("sigma"), ShiftMap.affine(1, h, "tau")
        s, t, name = Fraction(1), Fraction(1), f"H({h})"
    elif tag == "q":
        q = _need(kind, "q")
        if q in (0, 1):
            raise InvalidParams("q-calculus needs q not in {0, 1}")
        sigma, tau = ShiftMap.identity("sigma"), ShiftMap.affine(q, 0, "tau")
        s, t, name = Fraction(1), q, f"Q({q})"
    elif tag == "h_symmetric":
        h = _need(kind, "h")
        if h == 0:
            raise InvalidParams("symmetric h-calculus needs h != 0")
        sigma, tau = ShiftMap.affine(1, -h, "sigma"), ShiftMap.affine(1, h, "tau")
        s, t, name = Fraction(1), Fraction(1), f"HS({h})"
    elif tag == "q_symmetric":
        q = _need(kind, "q")
        if q in (0, 1, -1):
            raise InvalidParams("symmetric q-calculus needs q not in {0, 1, -1}")
        sigma, tau = ShiftMap.affine(1 / q, 0, "sigma"), ShiftMap.affine(q, 0, "tau")
        s, t, name = 1 / q, q, f"QS({q})"
    elif tag == "affine":
        q, h = _need(kind, "q"), _need(kind, "h")
        qp, hp = _need(kind, "q_prime"), _need(kind, "h_prime")
        if q == qp and h == hp:
            raise InvalidParams("affine calculus needs q != q' or h != h'")
        sigma, tau = ShiftMap.affine(qp, hp, "sigma"), ShiftMap.affine(q, h, "tau")
        s, t, name = qp, q, f"A({q},{h};{qp},{hp})"
    else:
        raise InvalidParams(f"make_preset cannot build kind {tag!r}")
    if base_points is None:
        default = 0 if tag in ("h", "h_symmetric") else 1
        base_points = [("1", Fraction(default))]
    base_points = tuple((str(lab), to_scalar(p)) for lab, p in base_points)
    return QuantumFrame(sigma, tau, TensionFn.difference(), s, t, base_points,
                        name=name, kind=kind)


# ---------------------------------------------------------------------------
# difference and derivative

def qdiff(frame: QuantumFrame, f: Fn, p: Point) -> Scalar:
    frame.check_domain(p)
    tp, sp = frame.tau(p), frame.sigma(p)
    frame.check_domain(tp, sp)
    return f(tp) - f(sp)


def _denominator(frame: QuantumFrame, p: Point) -> Scalar:
    frame.check_domain(p)
    tp, sp = frame.tau(p), frame.sigma(p)
    frame.check_domain(tp, sp)
    den = frame.theta(tp, sp)
    if is_zero(den):
        raise ZeroTension(f"theta(tau(p), sigma(p)) = 0 at p = {p}: point excluded from {frame.name}")
    return den


def qderiv(frame: QuantumFrame, f: Fn, p: Point) -> Scalar:
    """[f(tau p) - f(sigma p)] / theta(tau p, sigma p)."""
    den = _denominator(frame, p)
    return (f(frame.tau(p)) - f(frame.sigma(p))) / den


def qderiv_all(frame: QuantumFrame, f: Fn, k: int, p: Point) -> list:
    """[D^0 f(p), ..., D^k f(p)] from one memoized sigma^i tau^j grid.

    Grid point (i, j) is sigma^i tau^j (p); tau of (i, j) is taken to be
    (i, j+1), which relies on sigma and tau commuting.
    """
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    points = {}

    def point(i, j):
        key = (i, j)
        if key not in points:
            if i == 0 and j == 0:
                x = p
            elif i == 0:
                x = frame.tau(point(0, j - 1))
            else:
                x = frame.sigma(point(i - 1, j))
            frame.check_domain(x)
            points[key] = x
        return points[key]

    # level r holds D^r f on the triangle i + j <= k - r
    level = {(i, j): f(point(i, j)) for i in range(k + 1) for j in range(k + 1 - i)}
    out = [level[(0, 0)]]
    for r in range(1, k + 1):
        nxt = {}
        for i in range(k + 1 - r):
            for j in range(k + 1 - r - i):
                den = frame.theta(point(i, j + 1), point(i + 1, j))
                if is_zero(den):
                    raise ZeroTension(
                        f"theta(tau(p), sigma(p)) = 0 at grid point {point(i, j)} "
                        f"(excluded from {frame.name})")
                nxt[(i, j)] = (level[(i, j + 1)] - level[(i + 1, j)]) / den
        level = nxt
        out.append(level[(0, 0)])
    return out


def qderiv_iter(frame: QuantumFrame, f: Fn, k: int, p: Point) -> Scalar:
    return qderiv_all(frame, f, k, p)[-1]


def leibniz_residual(frame: QuantumFrame, f: Fn, g: Fn, p: Point) -> Scalar:
    lhs = qderiv(frame, lambda x: f(x) * g(x), p)
    rhs = f(frame.tau(p)) * qderiv(frame, g, p) + qderiv(frame, f, p) * g(frame.sigma(p))
    return lhs - rhs


def kernel_witness_check(frame: QuantumFrame, zeta: Fn, chi: Callable[[Point], Point],
                         samples: Iterable[Point]) -> bool:
    """Check that zeta . chi is again a D-constant on the admissible samples.

    Raises CommutationFailure if chi does not commute with sigma and tau,
    and NotInKernel if zeta itself is not annihilated by D.
    """
    pts = [p for p in samples if frame.admissible(p)]
    for p in pts:
        if chi(frame.sigma(p)) != frame.sigma(chi(p)) or chi(frame.tau(p)) != frame.tau(chi(p)):
            raise CommutationFailure(f"chi does not commute with sigma, tau at {p}")
    for p in pts:
        d = qderiv(frame, zeta, p)
        if not is_zero(d, zeta(frame.tau(p))):
            raise NotInKernel(f"D(zeta)({p}) = {d} != 0")
    composed = lambda x: zeta(chi(x))  # noqa: E731
    return all(is_zero(qderiv(frame, composed, p), composed(frame.tau(p))) for p in pts)


def default_samples(frame: QuantumFrame, count: int, depth: int = 0) -> list:
    """Deterministic non-lattice rationals whose sigma/tau grid up to ``depth`` is admissible."""
    out = []
    i = 0
    while len(out) < count:
        if i > 50 * count + 100:
            raise DomainError(f"could not find {count} admissible samples for {frame.name}")
        p = Fraction(3 * i + 5, 7)
        i += 1
        try:
            ok = all(frame.admissible(x) for x in _grid_points(frame, p, depth))
        except DomainError:
            ok = False
        if ok:
            out.append(p)
    return out


def _grid_points(frame: QuantumFrame, p: Point, depth: int):
    row = p
    for i in range(depth + 1):
        x = row
        for j in range(depth + 1 - i):
            yield x
            x = frame.tau(x)
        row = frame.sigma(row)
