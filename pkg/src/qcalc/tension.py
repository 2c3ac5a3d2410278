"""Tension spaces: points, tension functions, shift maps and calculus frames.

A frame bundles the two shifts ``sigma`` and ``tau`` with a tension function
``theta`` playing the role of a coordinate difference.  Everything here is
checked on finite sample sets; nothing claims a property for all points.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from numbers import Real
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

from .errors import (
    DegenerateSample,
    DomainError,
    EmptySamples,
    NoInverse,
    NotHomogeneous,
)
from .scalars import Scalar, close, format_scalar, is_zero, sign, to_scalar

Point = Hashable

#: default bound on n when checking that rho^n has no fixed points
FIXED_POINT_BOUND = 16


@dataclass(frozen=True)
class TensionFn:
    """An additive, skew-symmetric two-point function ``theta(p1, p2)``."""

    evaluator: Callable[[Point, Point], Scalar]
    name: str = "theta"

    def __call__(self, p1: Point, p2: Point) -> Scalar:
        return self.evaluator(p1, p2)

    @classmethod
    def difference(cls) -> "TensionFn":
        return cls(lambda p1, p2: p1 - p2, "p1 - p2")

    @classmethod
    def from_potential(cls, phi: Callable[[Point], Scalar], name: str = "phi") -> "TensionFn":
        """theta(p1, p2) = phi(p1) - phi(p2); additive by construction."""
        return cls(lambda p1, p2: phi(p1) - phi(p2), f"{name}(p1) - {name}(p2)")


@dataclass(frozen=True)
class ShiftMap:
    """A map M -> M with an optional inverse and declared homogeneity."""

    forward: Callable[[Point], Point]
    inverse: Optional[Callable[[Point], Point]] = None
    declared_homogeneity: Optional[Scalar] = None
    name: str = "rho"
    is_identity: bool = False

    def __call__(self, p: Point) -> Point:
        return self.forward(p)

    @property
    def invertible(self) -> bool:
        return self.is_identity or self.inverse is not None

    def power(self, n: int, p: Point) -> Point:
        """Apply the map ``n`` times; negative ``n`` uses the inverse."""
        if self.is_identity or n == 0:
            return p
        if n > 0:
            step = self.forward
        else:
            if self.inverse is None:
                raise NoInverse(f"{self.name} has no declared inverse")
            step = self.inverse
        for _ in range(abs(n)):
            p = step(p)
        return p

    def inverted(self) -> "ShiftMap":
        if self.is_identity:
            return self
        if self.inverse is None:
            raise NoInverse(f"{self.name} has no declared inverse")
        r = self.declared_homogeneity
        return ShiftMap(self.inverse, self.forward, None if r is None else 1 / r,
                        f"{self.name}^-1")

    @classmethod
    def identity(cls, name: str = "id") -> "ShiftMap":
        return cls(lambda p: p, lambda p: p, 1, name, is_identity=True)

    @classmethod
    def affine(cls, a: Scalar, b: Scalar = 0, name: str = "rho") -> "ShiftMap":
        """x -> a*x + b.  The homogeneity is ``a`` w.r.t. the difference tension."""
        a, b = to_scalar(a), to_scalar(b)
        if a == 1 and b == 0:
            return cls.identity(name)
        inverse = None if a == 0 else (lambda x: (x - b) / a)
        return cls(lambda x: a * x + b, inverse, a, name)

    @classmethod
    def table(cls, mapping: dict, name: str = "rho") -> "ShiftMap":
        """A map on a finite point set; invertible when the table is a bijection."""
        forward = dict(mapping)
        back = {v: k for k, v in forward.items()}

        def fwd(p):
            try:
                return forward[p]
            except KeyError:
                raise DomainError(f"{name} is not defined at {p!r}") from None

        def inv(p):
            try:
                return back[p]
            except KeyError:
                raise DomainError(f"{name}^-1 is not defined at {p!r}") from None

        return cls(fwd, inv if len(back) == len(forward) else None, None, name)


def _is_number(p: Any) -> bool:
    return isinstance(p, Real) and not isinstance(p, bool)


@dataclass(frozen=True)
class QuantumFrame:
    """A (sigma, tau)-calculus: shifts, tension, homogeneity coefficients.

    ``s`` and ``t`` are the sigma- and tau-homogeneity coefficients; ``None``
    means undeclared.  ``domain`` describes M (default: real numbers) and
    ``exclusions`` removes individual points from it.  Admissible points are
    domain points with theta(tau(p), sigma(p)) != 0.
    """

    sigma: ShiftMap
    tau: ShiftMap
    theta: TensionFn
    s: Optional[Scalar] = None
    t: Optional[Scalar] = None
    base_points: tuple = ()
    domain: Optional[Callable[[Point], bool]] = None
    exclusions: frozenset = frozenset()
    name: str = "frame"
    kind: Any = None
    extra: dict = field(default_factory=dict, compare=False)

    def in_domain(self, p: Point) -> bool:
        try:
            hash(p)
        except TypeError:
            return False
        if p in self.exclusions:
            return False
        if self.domain is None:
            return _is_number(p)
        return bool(self.domain(p))

    def check_domain(self, *points: Point) -> None:
        for p in points:
            if not self.in_domain(p):
                raise DomainError(f"point {p!r} is outside the domain of {self.name}")

    def step_tension(self, p: Point) -> Scalar:
        """theta(tau(p), sigma(p)), the denominator of the divided difference."""
        return self.theta(self.tau(p), self.sigma(p))

    def admissible(self, p: Point) -> bool:
        if not self.in_domain(p):
            return False
        try:
            tp, sp = self.tau(p), self.sigma(p)
        except DomainError:
            return False
        if not (self.in_domain(tp) and self.in_domain(sp)):
            return False
        return not is_zero(self.theta(tp, sp))

    def base_point(self, label: Optional[str] = None) -> Point:
        if not self.base_points:
            raise DomainError(f"{self.name} declares no base points")
        if label is None:
            return self.base_points[0][1]
        for lab, p in self.base_points:
            if lab == label:
                return p
        raise DomainError(f"{self.name} has no base point labelled {label!r}")


# ---------------------------------------------------------------------------
# operations

def theta_eval(frame: QuantumFrame, p1: Point, p2: Point) -> Scalar:
    frame.check_domain(p1, p2)
    return frame.theta(p1, p2)


def potential(frame: QuantumFrame, q: Point, p: Point) -> Scalar:
    """The potential theta_q(p) = theta(p, q), vanishing at ``q``."""
    frame.check_domain(q, p)
    return frame.theta(p, q)


class Direction(str, Enum):
    RIGHTWARD = "rightward"
    LEFTWARD = "leftward"
    UNDIRECTED = "undirected"


def classify_directed(frame: QuantumFrame, rho: ShiftMap,
                      samples: Sequence[Point]) -> Direction:
    """Rightward iff theta(p, rho(p)) < 0 on every sample, leftward iff > 0."""
    if not samples:
        raise EmptySamples("classify_directed needs at least one sample")
    signs = set()
    for p in samples:
        frame.check_domain(p)
        signs.add(sign(frame.theta(p, rho(p))))
    if signs == {-1}:
        return Direction.RIGHTWARD
    if signs == {1}:
        return Direction.LEFTWARD
    return Direction.UNDIRECTED


def homogeneity_coefficient(frame: QuantumFrame, rho: ShiftMap,
                            samples: Iterable[tuple]) -> Scalar:
    """Infer r with theta(rho(p1), rho(p2)) = r * theta(p1, p2).

    Raises NotHomogeneous when the ratio varies over the sample pairs and
    DegenerateSample when every pair has zero tension.
    """
    pairs = list(samples)
    r = None
    for p1, p2 in pairs:
        frame.check_domain(p1, p2)
        base = frame.theta(p1, p2)
        if is_zero(base):
            continue
        ratio = frame.theta(rho(p1), rho(p2)) / base
        if r is None:
            r = ratio
        elif not close(ratio, r):
            raise NotHomogeneous(
                f"{rho.name}: ratio {format_scalar(ratio)} at {_pts((p1, p2))} "
                f"differs from {format_scalar(r)}")
    if r is None:
        raise DegenerateSample("every sample pair has zero tension")
    points = [p for pair in pairs for p in pair]
    if classify_directed(frame, rho, points) is not Direction.UNDIRECTED and not r > 0:
        # a directed map always has a positive coefficient
        raise NotHomogeneous(f"{rho.name} is theta-directed but r = {format_scalar(r)} <= 0")
    return r


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)


def _pts(item) -> str:
    if isinstance(item, tuple):
        return "(" + ", ".join(format_scalar(x) for x in item) + ")"
    return format_scalar(item)


def _first_failure(items, predicate):
    for item in items:
        if not predicate(item):
            return item
    return None


def validate_frame(frame: QuantumFrame, samples: Sequence[Point],
                   directed_maps: Optional[Sequence[ShiftMap]] = None,
                   bound: int = FIXED_POINT_BOUND) -> ValidationReport:
    """Run every structural frame check on ``samples``; failures become entries.

    ``directed_maps`` defaults to whichever of sigma and tau classify as
    theta-directed on the samples.
    """
    if not samples:
        raise EmptySamples("validate_frame needs at least one sample")
    th = frame.theta
    report = ValidationReport()
    add = report.checks.append

    def additive(triple):
        a, b, c = triple
        lhs, rhs = th(a, b) + th(b, c), th(a, c)
        return is_zero(lhs - rhs, max(abs(lhs), abs(rhs)))

    bad = _first_failure(itertools.product(samples, repeat=3), additive)
    add(CheckResult("additivity", bad is None, "" if bad is None else f"fails at {_pts(bad)}"))

    bad = _first_failure(itertools.product(samples, repeat=2),
                         lambda pq: close(th(*pq), -th(pq[1], pq[0])))
    add(CheckResult("skew_symmetry", bad is None, "" if bad is None else f"fails at {_pts(bad)}"))

    bad = _first_failure(samples, lambda p: is_zero(th(p, p)))
    add(CheckResult("zero_diagonal", bad is None, "" if bad is None else f"fails at {_pts(bad)}"))

    bad = _first_failure(samples, lambda p: frame.sigma(frame.tau(p)) == frame.tau(frame.sigma(p)))
    add(CheckResult("commutation", bad is None, "" if bad is None else f"sigma.tau != tau.sigma at {_pts(bad)}"))

    zero_at = [p for p in samples if is_zero(frame.step_tension(p))]
    add(CheckResult("tension_nonzero", not zero_at,
                    "" if not zero_at else f"theta(tau(p), sigma(p)) = 0 at {_pts(tuple(zero_at))}"))

    if directed_maps is None:
        directed_maps = [m for m in (frame.sigma, frame.tau)
                         if classify_directed(frame, m, samples) is not Direction.UNDIRECTED]
    for rho in directed_maps:
        problem = _fixed_point_problem(frame, rho, samples, bound)
        add(CheckResult(f"no_fixed_points[{rho.name}]", problem is None, problem or ""))

    pairs = list(itertools.combinations(samples, 2))
    for label, rho, declared in (("s", frame.sigma, frame.s), ("t", frame.tau, frame.t)):
        add(_homogeneity_check(frame, rho, declared, pairs, f"homogeneity_{label}"))
    return report


def _fixed_point_problem(frame, rho, samples, bound):
    for p in samples:
        first = sign(frame.theta(rho(p), p))
        x = p
        for n in range(1, bound + 1):
            x = rho(x)
            if x == p:
                return f"{rho.name}^{n} fixes {_pts(p)}"
            if sign(frame.theta(x, p)) != first or first == 0:
                return f"theta({rho.name}^{n}(p), p) changes sign at p={_pts(p)}"
    return None


def _homogeneity_check(frame, rho, declared, pairs, name):
    if not pairs:
        return CheckResult(name, declared is not None, "no sample pairs")
    try:
        r = homogeneity_coefficient(frame, rho, pairs)
    except (NotHomogeneous, DegenerateSample) as exc:
        return CheckResult(name, False, str(exc))
    if declared is None:
        return CheckResult(name, True, f"inferred {format_scalar(r)}")
    if not close(r, declared):
        return CheckResult(name, False, f"declared {format_scalar(declared)} but inferred {format_scalar(r)}")
    return CheckResult(name, True, format_scalar(r))

