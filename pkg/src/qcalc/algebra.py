"""Right invertible operators on finite-dimensional rational spaces.

A difference instance ``(Dx)_n = x_{n+k} - x_n`` maps Q^N onto Q^(N-k).  Its
powers are formed through a *tower*: the same rule applied to the shrinking
spaces Q^N -> Q^(N-k) -> Q^(N-2k) -> ..., each level carrying its own right
inverse and initial operator.  Difference instances commute with truncation
(dropping trailing entries), which is how kernel vectors of the top level
are carried down the tower.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import (
    BadShape,
    DimensionOverflow,
    InvalidKernelBasis,
    InvarianceFailure,
    NotADirectSum,
    NotAnInitialOperator,
    NotAPolynomial,
    NotARightInverse,
    NotRightInvertible,
)
from .matrix import LinOp, Vector, in_span, independent_subset, rank_of, row_reduce, vec


@dataclass(frozen=True, eq=False)
class DifferenceOp(LinOp):
    """(Dx)_n = x_{n+stride} - x_n, an (N - stride) x N matrix."""

    stride: int = 1

    def successor(self) -> "DifferenceOp":
        """The same rule one level down the tower, acting on Q^rows."""
        return _difference(self.rows, self.stride)

    def power(self, m: int) -> LinOp:
        out, cur = LinOp.identity(self.cols), self
        for _ in range(m):
            out = cur @ out
            cur = cur.successor()
        return out


def _difference(n: int, k: int) -> DifferenceOp:
    rows = max(n - k, 0)
    one, zero = Fraction(1), Fraction(0)
    entries = tuple(tuple(-one if j == i else one if j == i + k else zero for j in range(n))
                    for i in range(rows))
    return DifferenceOp(rows, n, entries, stride=k)


def build_difference_instance(kind: str, N: int, k: int = 1) -> DifferenceOp:
    """Forward (k = 1) or stride-k difference matrix on Q^N."""
    if kind == "forward":
        k = 1
    elif kind != "stride":
        raise ValueError(f"unknown instance kind {kind!r}")
    if k < 1 or N <= k:
        raise BadShape(f"need N >= k + 1 >= 2, got N={N}, k={k}")
    return _difference(N, k)


def _power(D: LinOp, m: int) -> LinOp:
    if m == 0:
        return LinOp.identity(D.cols)
    if m == 1:
        return D
    return D.power(m)


# ---------------------------------------------------------------------------
# right inverses and initial operators

def right_inverse(D: LinOp) -> LinOp:
    """Canonical right inverse: free variables are the leftmost admissible columns.

    Pivots are searched from the last column backwards, so the kernel
    directions left free (and set to zero) are the first dim-ker columns
    whenever those admit a complement.
    """
    n = D.cols
    if D.rows == 0:
        return LinOp.zeros(n, 0)
    aug = [list(r) + list(e) for r, e in zip(D.entries, LinOp.identity(D.rows).entries)]
    red, piv = row_reduce(aug, range(n - 1, -1, -1))
    if len(piv) < D.rows:
        raise NotRightInvertible(f"rank {len(piv)} < {D.rows} rows")
    out = [[Fraction(0)] * D.rows for _ in range(n)]
    for r, c in enumerate(piv):
        out[c] = red[r][n:]
    return LinOp.from_rows(out, D.rows)


def _require_right_inverse(D: LinOp, R: LinOp) -> None:
    if R.shape != (D.cols, D.rows) or not (D @ R).is_identity():
        raise NotARightInverse("D @ R is not the identity on the codomain")


def initial_from_right(D: LinOp, R: LinOp) -> LinOp:
    """F = I - R D."""
    _require_right_inverse(D, R)
    return LinOp.identity(D.cols) - R @ D


def is_initial_operator(D: LinOp, F: LinOp) -> bool:
    """F idempotent with image equal to ker D."""
    if F.shape != (D.cols, D.cols):
        return False
    if F @ F != F or not (D @ F).is_zero():
        return False
    return F.rank() == D.cols - D.rank()


def right_from_initial(D: LinOp, R_prime: LinOp, F: LinOp) -> LinOp:
    """R = R' - F R'; the result does not depend on which R' is supplied."""
    _require_right_inverse(D, R_prime)
    if not is_initial_operator(D, F):
        raise NotAnInitialOperator("F is not an idempotent projection onto ker D")
    return R_prime - F @ R_prime


def family_member(D: LinOp, R: LinOp, F: LinOp, A: LinOp, which: str = "right") -> LinOp:
    """R + F A (another right inverse) or F (I - A D) (another initial operator)."""
    if A.shape != (D.cols, D.rows):
        raise BadShape(f"A must be {D.cols}x{D.rows}, got {A.rows}x{A.cols}")
    if which == "right":
        return R + F @ A
    if which == "initial":
        return F @ (LinOp.identity(D.cols) - A @ D)
    raise ValueError(f"which must be 'right' or 'initial', not {which!r}")


@dataclass(frozen=True)
class OperatorTriple:
    D: LinOp
    R: LinOp
    F: LinOp

    @classmethod
    def from_right(cls, D: LinOp, R: Optional[LinOp] = None) -> "OperatorTriple":
        R = right_inverse(D) if R is None else R
        return cls(D, R, initial_from_right(D, R))

    def satisfies_contract(self) -> bool:
        D, R, F = self.D, self.R, self.F
        return ((D @ R).is_identity() and F @ F == F and (F @ R).is_zero()
                and is_initial_operator(D, F))


class OperatorTower:
    """Levels 0, 1, 2, ... of an operator whose powers shrink the space.

    Level 0 is the supplied triple.  Lower levels use ``right`` (default: the
    canonical right inverse) on the successor instance.  A square D gives a
    stationary tower where every level is the same triple.
    """

    def __init__(self, top: Union[OperatorTriple, LinOp],
                 right: Callable[[LinOp], LinOp] = right_inverse):
        if isinstance(top, LinOp):
            top = OperatorTriple.from_right(top, right(top))
        self._right = right
        self._levels = [top]

    def level(self, i: int) -> OperatorTriple:
        while len(self._levels) <= i:
            prev = self._levels[-1]
            D = prev.D
            if D.rows == D.cols:
                self._levels.append(prev)
            elif isinstance(D, DifferenceOp):
                nxt = D.successor()
                self._levels.append(OperatorTriple.from_right(nxt, self._right(nxt)))
            else:
                raise BadShape("powers of a rectangular operator need a difference instance")
        return self._levels[i]

    def dim(self, i: int) -> int:
        return self.level(i).D.cols

    @property
    def top(self) -> OperatorTriple:
        return self._levels[0]

    def D_pow(self, k: int) -> LinOp:
        """D^k from level 0 down to level k."""
        out = LinOp.identity(self.dim(0))
        for i in range(k):
            out = self.level(i).D @ out
        return out

    def R_pow(self, k: int) -> LinOp:
        """R^k from level k back up to level 0."""
        out = LinOp.identity(self.dim(k))
        for i in reversed(range(k)):
            out = self.level(i).R @ out
        return out

    def restrict(self, v: Sequence, i: int) -> Vector:
        return vec(v)[: self.dim(i)]


def _as_tower(T) -> OperatorTower:
    return T if isinstance(T, OperatorTower) else OperatorTower(T)


# ---------------------------------------------------------------------------
# kernels and polynomials

@dataclass(frozen=True)
class GradedKernel:
    """Nested bases of ker D^m for m = 1..m_max.

    ``bases[m-1]`` spans ker D^m and extends ``bases[m-2]``; the vectors it
    adds are representatives of Z_m = ker D^m minus ker D^(m-1).
    """

    powers: tuple
    bases: tuple

    @property
    def m_max(self) -> int:
        return len(self.bases)

    @property
    def dims(self) -> tuple:
        return tuple(len(b) for b in self.bases)

    def new_at(self, m: int) -> list:
        prev = self.bases[m - 2] if m >= 2 else ()
        return list(self.bases[m - 1][len(prev):])

    def in_kernel(self, u: Sequence, m: int) -> bool:
        u = vec(u)
        if m == 0:
            return all(x == 0 for x in u)
        return all(x == 0 for x in self.powers[m - 1] @ u)

    def level_of(self, u: Sequence) -> int:
        """The m with u in Z_m (0 for the zero vector)."""
        for m in range(self.m_max + 1):
            if self.in_kernel(u, m):
                return m
        raise NotAPolynomial(f"vector is not annihilated by D^{self.m_max}")

    def degree_of(self, u: Sequence) -> Optional[int]:
        """min{m : D^m u = 0} - 1; None for the zero vector, which has no degree."""
        m = self.level_of(u)
        return None if m == 0 else m - 1


def kernel_gradation(D: LinOp, m_max: int) -> GradedKernel:
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    powers, bases = [], []
    basis: list = []
    for m in range(1, m_max + 1):
        P = _power(D, m)
        powers.append(P)
        for v in P.nullspace():
            if rank_of(basis + [v]) > len(basis):
                basis.append(v)
        bases.append(tuple(basis))
    return GradedKernel(tuple(powers), tuple(bases))


def taylor_identity_residual(T, m: int) -> LinOp:
    """I - sum_{k<=m} R^k F D^k - R^(m+1) D^(m+1) on the top level."""
    tower = _as_tower(T)
    acc = LinOp.identity(tower.dim(0))
    for k in range(m + 1):
        acc = acc - tower.R_pow(k) @ tower.level(k).F @ tower.D_pow(k)
    return acc - tower.R_pow(m + 1) @ tower.D_pow(m + 1)


def _check_kernel_basis(tower: OperatorTower, kernel_basis: Sequence) -> list:
    D = tower.top.D
    zs = [vec(z) for z in kernel_basis]
    if any(len(z) != D.cols for z in zs):
        raise InvalidKernelBasis("kernel vectors must live on the top level")
    if any(any(x != 0 for x in D @ z) for z in zs):
        raise InvalidKernelBasis("a supplied vector is not in ker D")
    if rank_of(zs) != len(zs) or len(zs) != D.cols - D.rank():
        raise InvalidKernelBasis("vectors do not form a basis of ker D")
    return zs


def monomial_basis(T, kernel_basis: Sequence, n: int) -> list:
    """{R^m zeta_s : m <= n}, ordered by m then s; a basis of ker D^(n+1).

    Raises DimensionOverflow when (n+1) * dim ker D exceeds the space: a
    truncated model cannot hold that many independent polynomials.
    """
    tower = _as_tower(T)
    zs = _check_kernel_basis(tower, kernel_basis)
    if (n + 1) * len(zs) > tower.dim(0):
        raise DimensionOverflow(
            f"(n+1)*dim ker D = {(n + 1) * len(zs)} exceeds dimension {tower.dim(0)}")
    return [tower.R_pow(m) @ tower.restrict(z, m) for m in range(n + 1) for z in zs]


def poly_expand_matrix(T, u: Sequence, n: int) -> list:
    """z_k = F D^k u, each living on tower level k, with u = sum R^k z_k."""
    tower = _as_tower(T)
    u = vec(u)
    if any(x != 0 for x in tower.D_pow(n + 1) @ u):
        raise NotAPolynomial(f"D^{n + 1} u != 0")
    return [tower.level(k).F @ (tower.D_pow(k) @ u) for k in range(n + 1)]


def combine_inverses(D: LinOp, R1: LinOp, R2: LinOp,
                     P_basis: Sequence, Q_basis: Sequence) -> OperatorTriple:
    """Right inverse acting as R1 on the polynomial block and R2 on its complement.

    ``P_basis`` and ``Q_basis`` split the domain of D.  The split is carried to
    the domain of R (= im D) as im D = D(P) + D(Q); this is direct because the
    P block must contain ker D.  The P block must also be R1-invariant.
    """
    _require_right_inverse(D, R1)
    _require_right_inverse(D, R2)
    P, Q = [vec(v) for v in P_basis], [vec(v) for v in Q_basis]
    if any(len(v) != D.cols for v in P + Q):
        raise NotADirectSum("basis vectors have the wrong length")
    if len(P) + len(Q) != D.cols or rank_of(P + Q) != D.cols:
        raise NotADirectSum("P and Q bases do not form a basis of the domain")
    if any(not in_span(z, P) for z in D.nullspace()):
        raise InvarianceFailure("P block does not contain ker D")
    DP = independent_subset([D @ p for p in P])
    if any(not in_span(R1 @ y, P) for y in DP):
        raise InvarianceFailure("P block is not invariant under R1")
    DQ = [D @ q for q in Q]
    B = DP + DQ
    if len(B) != D.rows or rank_of(B) != D.rows:
        raise NotADirectSum("D(P) and D(Q) do not split the codomain")
    images = [R1 @ y for y in DP] + [R2 @ y for y in DQ]
    R = LinOp.from_columns(images, D.cols) @ LinOp.from_columns(B, D.rows).inverse()
    return OperatorTriple.from_right(D, R)
