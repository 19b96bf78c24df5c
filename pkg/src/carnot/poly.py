"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .scalars import format_scalar

Exponent = tuple[int, ...]


def grevlex_key(e: Exponent):
    # larger key = larger monomial
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e: Exponent):
    return e


ORDERS: dict[str, Callable[[Exponent], object]] = {"grevlex": grevlex_key, "lex": lex_key}


def order_key(order: str):
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


class MultiPoly:
    """Polynomial in ``n`` variables as a map exponent tuple -> coefficient.

    Zero coefficients are never stored. Coefficients may be ``Fraction`` or
    ``GaussianRational``.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Exponent, object]] = None):
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError("exponent length does not match the variable count")
            if isinstance(c, int):
                c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "MultiPoly":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> "MultiPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "MultiPoly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, e: Exponent, c=1) -> "MultiPoly":
        return cls(len(e), {tuple(e): c})

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.n != other.n:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MultiPoly(self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly(self.n)
            return MultiPoly(self.n, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return MultiPoly(self.n, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, e: Exponent, c) -> "MultiPoly":
        return MultiPoly(self.n, {tuple(a + b for a, b in zip(x, e)): v * c for x, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.n == other.n and self.terms == other.terms
        if not other:
            return not self.terms
        return self.terms == MultiPoly.constant(self.n, other).terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection ---------------------------------------------------------
    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading(self, order: str = "grevlex") -> tuple[Exponent, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order_key(order))
        return e, self.terms[e]

    def leading_monomial(self, order: str = "grevlex") -> Exponent:
        return self.leading(order)[0]

    def monic(self, order: str = "grevlex") -> "MultiPoly":
        if not self.terms:
            return self
        _, c = self.leading(order)
        inv = 1 / c
        return MultiPoly(self.n, {e: v * inv for e, v in self.terms.items()})

    def sorted_terms(self, order: str = "grevlex") -> list[tuple[Exponent, object]]:
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def evaluate(self, point: Sequence):
        if len(point) != self.n:
            raise ValueError("point has the wrong dimension")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def format(self, names: Optional[Sequence[str]] = None, order: str = "grevlex") -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.n)]
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = format_scalar(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}" if "+" not in cs[1:] and "-" not in cs[1:] else f"({cs})*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self.format()})"


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def poly_from_terms(n: int, terms: Iterable[tuple[Exponent, object]]) -> MultiPoly:
    acc: dict = {}
    for e, c in terms:
        acc[e] = acc.get(e, 0) + c
    return MultiPoly(n, acc)


def determinant_poly(matrix: Sequence[Sequence[MultiPoly]], n: int) -> MultiPoly:
    """Determinant of a square matrix of polynomials by cofactor expansion
    along the first row, memoised on column subsets."""
    size = len(matrix)
    if size == 0:
        return MultiPoly.constant(n, 1)
    memo: dict[tuple[int, tuple[int, ...]], MultiPoly] = {}

    def det(row: int, cols: tuple[int, ...]) -> MultiPoly:
        if row == size:
            return MultiPoly.constant(n, 1)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = MultiPoly(n)
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            minor = det(row + 1, cols[:pos] + cols[pos + 1 :])
            term = entry * minor
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return det(0, tuple(range(size)))
