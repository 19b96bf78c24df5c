"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts.

    >>> z = GaussianRational(1, 2)
    >>> z * z.conjugate()
    GaussianRational(5, 0)
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, _RationalABC)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / (self ** (-exponent))
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, GaussianRational]

I = GaussianRational(0, 1)


def is_real(x) -> bool:
    return not isinstance(x, GaussianRational) or x.im == 0


def real_part(x) -> Fraction:
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def imag_part(x) -> Fraction:
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def simplify(x):
    """Collapse a Gaussian rational with zero imaginary part to a Fraction."""
    if isinstance(x, GaussianRational):
        return x.re if x.im == 0 else x
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q``; decimals are rejected to keep inputs exact."""
    text = text.strip()
    if not text or "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    if not isinstance(x, GaussianRational):
        return format_rational(x)
    if x.im == 0:
        return format_rational(x.re)
    im = "" if abs(x.im) == 1 else format_rational(abs(x.im)) + "*"
    if x.re == 0:
        return ("-" if x.im < 0 else "") + im + "i"
    sign = "-" if x.im < 0 else "+"
    return f"{format_rational(x.re)}{sign}{im}i"


def scalar_to_json(x):
    """Rationals as ``"p/q"``; non-real Gaussian rationals as ``["p/q", "r/s"]``."""
    if isinstance(x, GaussianRational) and x.im != 0:
        return [format_rational(x.re), format_rational(x.im)]
    return format_rational(real_part(x))


def scalar_from_json(value):
    if isinstance(value, list):
        return GaussianRational(parse_rational(value[0]), parse_rational(value[1]))
    return parse_rational(value)
