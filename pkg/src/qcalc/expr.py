"""Rational polynomials in x and the text form used on the command line."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .scalars import format_scalar


@dataclass(frozen=True)
class Polynomial:
    """Coefficients in increasing degree; evaluated by Horner's rule."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def label(self) -> str:
        return str(self)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono:
                terms.append(f"{format_scalar(c)}*{mono}")
            else:
                terms.append(format_scalar(c))
        return " + ".join(reversed(terms))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Polynomial(out)
        return Polynomial([c * other for c in self.coeffs])

    __rmul__ = __mul__


def parse_polynomial(text: str) -> Polynomial:
    """Parse e.g. ``"x^2 - 3/2*x + 1"``; decimals are read exactly."""
    import sympy
    from sympy.parsing.sympy_parser import (
        convert_xor,
        implicit_multiplication_application,
        parse_expr,
        rationalize,
        standard_transformations,
    )

    x = sympy.Symbol("x")
    transformations = standard_transformations + (convert_xor, rationalize,
                                                  implicit_multiplication_application)
    try:
        expr = parse_expr(text, local_dict={"x": x}, transformations=transformations,
                          evaluate=True)
        poly = sympy.Poly(sympy.expand(expr), x)
    except Exception as exc:  # sympy raises a zoo of exception types
        raise ParseError(f"cannot parse {text!r} as a polynomial in x: {exc}") from None
    if poly.free_symbols - {x} or not poly.domain.is_QQ and not poly.domain.is_ZZ:
        raise ParseError(f"{text!r} is not a polynomial in x with rational coefficients")
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return Polynomial(coeffs)
