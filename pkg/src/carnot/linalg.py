"""Exact dense linear algebra over Q and Q(i).

Every routine works on any exact field whose elements support ``+ - * /``
and truthiness for zero tests (``Fraction`` and ``GaussianRational``).
Matrices are immutable; all operations return new values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _exact(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point entries are not allowed in exact matrices")
    return x


class ExactMatrix:
    """Immutable ``rows x cols`` matrix with exact entries, row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: Optional[int] = None):
        rows = tuple(tuple(_exact(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[_ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "ExactMatrix":
        return cls([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "ExactMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else _ZERO for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._data[i][j]
        return self._data[idx]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([self.column(j) for j in range(self.cols)], self.rows)

    T = property(transpose)

    def flatten(self) -> tuple:
        return tuple(x for r in self._data for x in r)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.cols,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.cols,
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[c * a for a in r] for r in self._data], self.cols)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ocols = [other.column(j) for j in range(other.cols)]
            return ExactMatrix([[_dot(r, c) for c in ocols] for r in self._data], other.cols)
        return self.apply(other)

    def apply(self, vector: Sequence) -> tuple:
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, vector) for r in self._data)

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def trace(self):
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), _ZERO)


def _dot(a: Sequence, b: Sequence):
    total = _ZERO
    for x, y in zip(a, b):
        if x and y:
            total = total + x * y
    return total


def as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix(m)


def _rref_rows(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan elimination with normalization after every pivot."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        inv = _ONE / pivot_row[c]
        if inv != 1:
            rows[r] = pivot_row = [x * inv if x else x for x in pivot_row]
        nz = [j for j in range(c, ncols) if pivot_row[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] = row[j] - f * pivot_row[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref_and_rank(m) -> tuple[ExactMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns of ``m``."""
    m = as_matrix(m)
    rows, pivots = _rref_rows(m.tolist(), m.cols)
    return ExactMatrix(rows, m.cols), len(pivots), pivots


def rank(m) -> int:
    m = as_matrix(m)
    return len(_rref_rows(m.tolist(), m.cols)[1])


def kernel_basis(m) -> list[tuple]:
    """Canonical kernel basis: one vector per free column of the RREF."""
    m = as_matrix(m)
    return _kernel_from_rows(m.tolist(), m.cols)


def _kernel_from_rows(rows: list[list], ncols: int) -> list[tuple]:
    rows, pivots = _rref_rows(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [_ZERO] * ncols
        v[f] = _ONE
        for r, pc in enumerate(pivots):
            x = rows[r][f]
            if x:
                v[pc] = -x
        basis.append(tuple(v))
    return basis


def kernel_of_rows(rows: Iterable[Sequence], ncols: int) -> list[tuple]:
    """Kernel of the system whose equations are ``rows`` (coefficient lists)."""
    return _kernel_from_rows([list(map(_exact, r)) for r in rows], ncols)


def solve_linear(m, rhs: Sequence) -> Optional[tuple]:
    """A solution of ``m x = rhs`` (free variables set to zero), or None."""
    m = as_matrix(m)
    if len(rhs) != m.rows:
        raise ValueError("rhs length must equal the row count")
    rows = [list(r) + [_exact(b)] for r, b in zip(m.tolist(), rhs)]
    rows, pivots = _rref_rows(rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [_ZERO] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][m.cols]
    return tuple(x)


def row_space_basis(vectors: Sequence[Sequence], dim: int) -> list[tuple]:
    """Canonical (RREF) basis of the span of ``vectors``."""
    rows, pivots = _rref_rows([list(map(_exact, v)) for v in vectors], dim)
    return [tuple(rows[i]) for i in range(len(pivots))]


def span_rank(vectors: Sequence[Sequence], dim: int) -> int:
    if not vectors:
        return 0
    return len(_rref_rows([list(map(_exact, v)) for v in vectors], dim)[1])


def is_independent(vectors: Sequence[Sequence], dim: int) -> bool:
    return span_rank(vectors, dim) == len(vectors)


def intersect_subspaces(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> list[tuple]:
    """Basis of span(a) ∩ span(b) via the kernel of ``[A | -B]``."""
    if not a or not b:
        return []
    cols = list(a) + [tuple(-x for x in v) for v in b]
    ker = kernel_of_rows([[c[i] for c in cols] for i in range(dim)], len(cols))
    vecs = []
    for k in ker:
        v = [_ZERO] * dim
        for coef, base in zip(k[: len(a)], a):
            if coef:
                for i in range(dim):
                    v[i] = v[i] + coef * base[i]
        vecs.append(v)
    return row_space_basis(vecs, dim)


class CoordinateSolver:
    """Coordinates of vectors with respect to a fixed independent family.

    A left inverse is built once from pivot rows; every lookup is verified by
    re-multiplication, so vectors outside the span are rejected exactly.
    """

    def __init__(self, basis: Sequence[Sequence], dim: int):
        self.basis = [tuple(map(_exact, v)) for v in basis]
        self.dim = dim
        k = len(self.basis)
        if k == 0:
            self._rows: list[int] = []
            self._inv: list[list] = []
            return
        # columns are basis vectors; pivots of the transpose give independent rows
        rows, pivots = _rref_rows([list(v) for v in self.basis], dim)
        if len(pivots) != k:
            raise ValueError("basis vectors are linearly dependent")
        self._rows = pivots
        square = [[self.basis[c][r] for c in range(k)] for r in pivots]
        aug = [row + [_ONE if i == j else _ZERO for j in range(k)] for i, row in enumerate(square)]
        aug, _ = _rref_rows(aug, 2 * k)
        self._inv = [row[k:] for row in aug]

    def coordinates(self, vector: Sequence) -> Optional[tuple]:
        if len(vector) != self.dim:
            raise ValueError("vector length mismatch")
        k = len(self.basis)
        if k == 0:
            return () if not any(vector) else None
        sub = [vector[r] for r in self._rows]
        coords = tuple(_dot(row, sub) for row in self._inv)
        for i in range(self.dim):
            acc = _ZERO
            for c, b in zip(coords, self.basis):
                if c and b[i]:
                    acc = acc + c * b[i]
            if acc != vector[i]:
                return None
        return coords


def combine(coefficients: Sequence, vectors: Sequence[Sequence], dim: int) -> tuple:
    out = [_ZERO] * dim
    for c, v in zip(coefficients, vectors):
        if c:
            for i, x in enumerate(v):
                if x:
                    out[i] = out[i] + c * x
    return tuple(out)


def determinant(m) -> object:
    m = as_matrix(m)
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    rows = m.tolist()
    n = m.rows
    det = _ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return _ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        piv = rows[c][c]
        det = det * piv
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                q = f / piv
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[c])]
    return det


def inverse(m) -> ExactMatrix:
    m = as_matrix(m)
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(m.tolist())]
    aug, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix([r[n:] for r in aug], n)


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return (a @ b) - (b @ a)
