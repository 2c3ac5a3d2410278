"""Exact rational matrices with explicit shapes.

Zero-row and zero-column matrices are legal; they appear at the bottom of
truncated operator towers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import BadShape, ParseError
from .scalars import to_scalar

Vector = tuple


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) if not isinstance(v, Fraction) else v for v in values)


def row_reduce(rows: Sequence[Sequence[Fraction]], col_order: Sequence[int]):
    """Gauss-Jordan elimination, choosing pivots in ``col_order``.

    Only the listed columns are eligible as pivot columns, which lets callers
    reduce an augmented matrix.  Returns (reduced rows, pivot columns).
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in col_order:
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank_of(vectors: Sequence[Sequence]) -> int:
    vectors = [v for v in vectors]
    if not vectors:
        return 0
    _, piv = row_reduce(vectors, range(len(vectors[0])))
    return len(piv)


def in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    return rank_of(list(basis) + [v]) == rank_of(basis)


def independent_subset(vectors: Sequence[Sequence]) -> list:
    """Greedy maximal independent subset, preserving order."""
    out = []
    for v in vectors:
        if rank_of(out + [v]) > len(out):
            out.append(v)
    return out


@dataclass(frozen=True)
class LinOp:
    """A rows x cols matrix of Fractions, i.e. a map Q^cols -> Q^rows."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise BadShape(f"entries do not form a {self.rows}x{self.cols} matrix")

    # construction -----------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: Optional[int] = None) -> "LinOp":
        data = tuple(vec(r) for r in rows)
        if cols is None:
            if not data:
                raise BadShape("cols must be given for a matrix without rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "LinOp":
        cols = [vec(c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise BadShape("column lengths disagree with row count")
        return cls.from_rows(([c[i] for c in cols] for i in range(rows)), len(cols))

    @classmethod
    def identity(cls, n: int) -> "LinOp":
        one, zero = Fraction(1), Fraction(0)
        return cls(n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "LinOp":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    # algebra ----------------------------------------------------------------

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __matmul__(self, other):
        if isinstance(other, LinOp):
            if self.cols != other.rows:
                raise BadShape(f"cannot compose {self.shape} with {other.shape}")
            cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
            data = tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
                         for row in self.entries)
            return LinOp(self.rows, other.cols, data)
        v = vec(other)
        if len(v) != self.cols:
            raise BadShape(f"cannot apply {self.shape} matrix to a vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.entries)

    def _zip(self, other: "LinOp", op) -> "LinOp":
        if self.shape != other.shape:
            raise BadShape(f"shape mismatch {self.shape} vs {other.shape}")
        return LinOp(self.rows, self.cols, tuple(
            tuple(op(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __add__(self, other: "LinOp") -> "LinOp":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "LinOp") -> "LinOp":
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> "LinOp":
        return self.scale(-1)

    def scale(self, c) -> "LinOp":
        c = Fraction(c)
        return LinOp(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LinOp):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    @property
    def T(self) -> "LinOp":
        return LinOp.from_columns(self.entries, self.cols) if self.rows else LinOp.zeros(self.cols, 0)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == LinOp.identity(self.rows)

    def power(self, m: int) -> "LinOp":
        if self.rows != self.cols:
            raise BadShape(f"power of a non-square {self.shape} matrix")
        out = LinOp.identity(self.rows)
        for _ in range(m):
            out = self @ out
        return out

    # elimination ------------------------------------------------------------

    def rank(self) -> int:
        if not self.rows:
            return 0
        _, piv = row_reduce(self.entries, range(self.cols))
        return len(piv)

    def nullspace(self) -> list:
        """Basis of the kernel, one vector per free column (free entry = 1)."""
        if not self.rows:
            return [tuple(Fraction(int(i == j)) for i in range(self.cols)) for j in range(self.cols)]
        red, piv = row_reduce(self.entries, range(self.cols))
        free = [c for c in range(self.cols) if c not in piv]
        basis = []
        for f in free:
            x = [Fraction(0)] * self.cols
            x[f] = Fraction(1)
            for r, c in enumerate(piv):
                x[c] = -red[r][f]
            basis.append(tuple(x))
        return basis

    def inverse(self) -> "LinOp":
        if self.rows != self.cols:
            raise BadShape("only square matrices have inverses")
        n = self.rows
        aug = [list(r) + list(e) for r, e in zip(self.entries, LinOp.identity(n).entries)]
        red, piv = row_reduce(aug, range(n))
        if len(piv) < n:
            raise BadShape("matrix is singular")
        return LinOp.from_rows((r[n:] for r in red), n)

    # text I/O ---------------------------------------------------------------

    def to_text(self) -> str:
        return "".join(" ".join(str(a) for a in r) + "\n" for r in self.entries)

    @classmethod
    def from_text(cls, text: str, cols: Optional[int] = None) -> "LinOp":
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            rows.append([to_scalar(tok) for tok in line.split()])
        if any(isinstance(a, float) for r in rows for a in r):
            raise ParseError("matrix entries must be rational")
        if rows and len({len(r) for r in rows}) != 1:
            raise ParseError("ragged matrix rows")
        return cls.from_rows(rows, cols)

    def __repr__(self):
        return f"LinOp({self.rows}x{self.cols})"
