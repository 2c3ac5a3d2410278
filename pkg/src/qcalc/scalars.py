"""Exact rational scalars, with a float fallback for non-rational frames."""
from __future__ import annotations

import math
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational, Real
from typing import Any, Union

from .errors import ParseError

Scalar = Union[int, Fraction, float]

#: relative tolerance used whenever a float enters a comparison
REL_TOL = 1e-12


def is_exact(x: Any) -> bool:
    return isinstance(x, Rational)


def to_scalar(value: Any) -> Scalar:
    """Convert user input to an exact scalar.

    Accepts ints, Fractions, ``"num/den"`` strings and decimal strings
    (``"0.1"`` becomes exactly 1/10).  Floats pass through unchanged.
    """
    if isinstance(value, bool):
        raise ParseError(f"not a number: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            pass
        try:
            return Fraction(Decimal(text))
        except (InvalidOperation, ValueError):
            raise ParseError(f"cannot read {value!r} as a rational number") from None
    if isinstance(value, Real):
        return float(value)
    raise ParseError(f"not a number: {value!r}")


def format_scalar(x: Any) -> str:
    """Render ``x`` as ``num/den`` (or an integer); floats use repr."""
    if isinstance(x, Rational):
        return str(Fraction(x))
    return repr(x)


def is_zero(x: Scalar, scale: Scalar = 0) -> bool:
    """Exact zero test for rationals, relative tolerance for floats."""
    if is_exact(x):
        return x == 0
    return abs(x) <= REL_TOL * max(1.0, abs(float(scale)))


def close(a: Scalar, b: Scalar) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=REL_TOL)


def sign(x: Scalar) -> int:
    if is_zero(x):
        return 0
    return 1 if x > 0 else -1
