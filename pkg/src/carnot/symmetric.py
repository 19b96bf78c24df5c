"""Symmetric tensors and the Singer–Sternberg prolongation of a matrix subspace."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from typing import Mapping, Optional, Sequence, Union

from .derivations import MatrixSubspace
from .linalg import ExactMatrix, kernel_of_rows
from .poly import MultiPoly
from .scalars import format_rational, parse_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)

MultiIndex = tuple[int, ...]


def multi_indices(n: int, k: int) -> list[MultiIndex]:
    """Weakly increasing multi-indices of length ``k`` over ``0..n-1``."""
    return list(combinations_with_replacement(range(n), k))


def multiplicity(index: Sequence[int]) -> int:
    """Number of distinct arrangements of ``index``."""
    out = math.factorial(len(index))
    for m in Counter(index).values():
        out //= math.factorial(m)
    return out


@dataclass(frozen=True)
class SymTensor:
    """Symmetric ``k``-tensor on an ``n``-dimensional space.

    ``coeffs`` maps each weakly increasing index to the common value of the
    tensor on all its arrangements. Zero entries are omitted.
    """

    n: int
    degree: int
    coeffs: tuple[tuple[MultiIndex, object], ...]

    @classmethod
    def from_dict(cls, n: int, degree: int, coeffs: Mapping[MultiIndex, object]) -> "SymTensor":
        clean = {}
        for j, c in coeffs.items():
            j = tuple(sorted(j))
            if len(j) != degree or any(not 0 <= x < n for x in j):
                raise ValueError(f"bad multi-index {j}")
            if c:
                clean[j] = Fraction(c) if isinstance(c, int) else c
        return cls(n, degree, tuple(sorted(clean.items())))

    def as_dict(self) -> dict[MultiIndex, object]:
        return dict(self.coeffs)

    def component(self, index: Sequence[int]):
        return self.as_dict().get(tuple(sorted(index)), _ZERO)

    def full_components(self) -> dict[MultiIndex, object]:
        """Value on every (not necessarily sorted) index."""
        out = {}
        for j, c in self.coeffs:
            for arr in set(permutations(j)):
                out[arr] = c
        return out

    def evaluate(self, vectors: Sequence[Sequence]):
        """Multilinear evaluation on ``degree`` vectors."""
        if len(vectors) != self.degree:
            raise ValueError("wrong number of arguments")
        total = _ZERO
        for idx, c in self.full_components().items():
            term = c
            for v, i in zip(vectors, idx):
                term = term * v[i]
                if not term:
                    break
            total = total + term
        return total

    def diagonal(self) -> MultiPoly:
        """The polynomial ``v -> T(v, ..., v)``."""
        return MultiPoly(
            self.n,
            {tuple(j.count(i) for i in range(self.n)): c * multiplicity(j) for j, c in self.coeffs},
        )


def symmetrize(n: int, tensor: Mapping[Sequence[int], object]) -> SymTensor:
    """Average a (possibly non-symmetric) ``k``-tensor over all permutations.

    ``tensor`` maps index tuples to coefficients; all keys share one length.
    """
    degrees = {len(k) for k in tensor}
    if len(degrees) > 1:
        raise ValueError("mixed tensor degrees")
    k = degrees.pop() if degrees else 0
    total: dict[MultiIndex, object] = {}
    for idx, c in tensor.items():
        j = tuple(sorted(idx))
        total[j] = total.get(j, _ZERO) + c
    # each arrangement contributes to its sorted class; average over the class
    return SymTensor.from_dict(n, k, {j: c / multiplicity(j) for j, c in total.items()})


def sym_product(n: int, covectors: Sequence[Sequence]) -> SymTensor:
    """``Sym(eta_1 (x) ... (x) eta_k)`` for explicit (co)vectors."""
    k = len(covectors)
    tensor = {}
    for idx in product(range(n), repeat=k):
        c = _ONE
        for v, i in zip(covectors, idx):
            c = c * v[i]
            if not c:
                break
        if c:
            tensor[idx] = c
    return symmetrize(n, tensor) if tensor else SymTensor(n, k, ())


def pairing(p: SymTensor, q: SymTensor):
    """Natural pairing of symmetric tensors on a space and its dual,
    normalised so that ``<v1...vk, eta1...etak>`` averages over matchings."""
    if p.degree != q.degree:
        raise ValueError("pairing needs equal degrees")
    if p.n != q.n:
        raise ValueError("pairing needs equal dimensions")
    qd = q.as_dict()
    total = _ZERO
    for j, c in p.coeffs:
        d = qd.get(j)
        if d:
            total = total + multiplicity(j) * c * d
    return total


def polarize(poly: MultiPoly) -> SymTensor:
    """The symmetric multilinear map whose diagonal is ``poly``."""
    if poly.is_zero():
        return SymTensor(poly.n, 0, ())
    if not poly.is_homogeneous():
        raise ValueError("polarize needs a homogeneous polynomial")
    k = poly.total_degree
    coeffs = {}
    for e, c in poly.terms.items():
        j = tuple(i for i, m in enumerate(e) for _ in range(m))
        coeffs[j] = c / multiplicity(j)
    return SymTensor.from_dict(poly.n, k, coeffs)


def pairing_gram(n: int, k: int) -> ExactMatrix:
    """Gram matrix of the pairing on the symmetrised monomial bases."""
    basis = [SymTensor.from_dict(n, k, {j: _ONE / multiplicity(j)}) for j in multi_indices(n, k)]
    return ExactMatrix([[pairing(a, b) for b in basis] for a in basis], len(basis))


# ---------------------------------------------------------------------------
# Singer–Sternberg prolongation


@dataclass(frozen=True)
class SSProlongationElement:
    """``T^i_J`` with ``J`` weakly increasing of length ``degree + 1``."""

    n: int
    degree: int
    coeffs: tuple[tuple[tuple[int, MultiIndex], object], ...]

    def as_dict(self) -> dict[tuple[int, MultiIndex], object]:
        return dict(self.coeffs)

    def component(self, i: int, index: Sequence[int]):
        return self.as_dict().get((i, tuple(sorted(index))), _ZERO)

    def slice(self, frozen: Sequence[int]) -> ExactMatrix:
        """Matrix ``(T^i_{frozen, j})_{i,j}``."""
        d = self.as_dict()
        return ExactMatrix(
            [[d.get((i, tuple(sorted(tuple(frozen) + (j,)))), _ZERO) for j in range(self.n)] for i in range(self.n)],
            self.n,
        )

    def contract(self, vectors: Sequence[Sequence]) -> ExactMatrix:
        """Insert ``degree`` vectors into the lower slots, leaving a matrix."""
        if len(vectors) != self.degree:
            raise ValueError("wrong number of vectors")
        acc = [[_ZERO] * self.n for _ in range(self.n)]
        for idx in product(range(self.n), repeat=self.degree):
            w = _ONE
            for v, i in zip(vectors, idx):
                w = w * v[i]
                if not w:
                    break
            if not w:
                continue
            m = self.slice(idx)
            for r in range(self.n):
                for c in range(self.n):
                    if m[r, c]:
                        acc[r][c] = acc[r][c] + w * m[r, c]
        return ExactMatrix(acc, self.n)

    def is_zero(self) -> bool:
        return not any(c for _, c in self.coeffs)


def _element(n: int, k: int, indices: list[MultiIndex], vec: Sequence) -> SSProlongationElement:
    m = len(indices)
    items = []
    for i in range(n):
        for t, j in enumerate(indices):
            c = vec[i * m + t]
            if c:
                items.append(((i, j), c))
    return SSProlongationElement(n, k, tuple(items))


def ss_prolongation_level(g0: MatrixSubspace, k: int) -> list[SSProlongationElement]:
    """Basis of the ``k``-th prolongation of ``g0``.

    Unknowns ``T^i_J``; for every frozen length-``k`` index the slice matrix
    must be annihilated by every row of ``g0.annihilator()``.
    """
    if k < 0:
        raise ValueError("prolongation level must be >= 0")
    n = g0.n
    if k == 0:
        return [
            _element(n, 0, multi_indices(n, 1), [b[i, j] for i in range(n) for j in range(n)]) for b in g0.basis
        ]
    indices = multi_indices(n, k + 1)
    pos = {j: t for t, j in enumerate(indices)}
    m = len(indices)
    ann = g0.annihilator()
    rows = []
    for frozen in multi_indices(n, k):
        # vec(M)[i*n + j] is unknown T^i_{sorted(frozen + j)}
        var = [[i * m + pos[tuple(sorted(frozen + (j,)))] for j in range(n)] for i in range(n)]
        for q in ann:
            row: dict[int, object] = {}
            for i in range(n):
                for j in range(n):
                    c = q[i * n + j]
                    if c:
                        v = var[i][j]
                        row[v] = row.get(v, _ZERO) + c
            if any(row.values()):
                dense = [_ZERO] * (n * m)
                for v, c in row.items():
                    dense[v] = c
                rows.append(dense)
    return [_element(n, k, indices, v) for v in kernel_of_rows(rows, n * m)]


def slice_defects(g0: MatrixSubspace, t: SSProlongationElement) -> list[MultiIndex]:
    """Frozen indices whose slice leaves ``span(g0)``."""
    return [f for f in multi_indices(g0.n, t.degree) if t.slice(f) not in g0]


@dataclass(frozen=True)
class FiniteType:
    level: int
    dims: tuple[int, ...]

    def __str__(self):
        return f"FiniteType({self.level})"


@dataclass(frozen=True)
class UndeterminedUpTo:
    level: int
    dims: tuple[int, ...]

    def __str__(self):
        return f"UndeterminedUpTo({self.level})"


ScanResult = Union[FiniteType, UndeterminedUpTo]


def finite_type_scan(g0: MatrixSubspace, max_k: int) -> ScanResult:
    """Compute levels ``0, 1, ...`` until one vanishes or ``max_k`` is passed.

    An :class:`UndeterminedUpTo` result is not a proof of infinite type.
    """
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    dims = []
    for k in range(max_k + 1):
        d = len(ss_prolongation_level(g0, k))
        dims.append(d)
        if d == 0:
            return FiniteType(k, tuple(dims))
    return UndeterminedUpTo(max_k, tuple(dims))


# ---------------------------------------------------------------------------
# classical subspaces


def _unit(n: int, i: int, j: int) -> ExactMatrix:
    return ExactMatrix([[_ONE if (r, c) == (i, j) else _ZERO for c in range(n)] for r in range(n)], n)


def classical_matrix_algebras(kind: str, n: int, v: Optional[Sequence] = None, omega: Optional[Sequence] = None) -> MatrixSubspace:
    """``co``, ``o``, ``gl``, ``sl`` or ``rank_one`` (needs ``v`` and ``omega``)."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    skew = [_unit(n, i, j) - _unit(n, j, i) for i in range(n) for j in range(i + 1, n)]
    if kind == "o":
        return MatrixSubspace(n, skew, f"o({n})")
    if kind == "co":
        return MatrixSubspace(n, skew + [ExactMatrix.identity(n)], f"co({n})")
    if kind == "gl":
        return MatrixSubspace(n, [_unit(n, i, j) for i in range(n) for j in range(n)], f"gl({n})")
    if kind == "sl":
        off = [_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
        diag = [_unit(n, i, i) - _unit(n, n - 1, n - 1) for i in range(n - 1)]
        return MatrixSubspace(n, off + diag, f"sl({n})")
    if kind == "rank_one":
        if v is None or omega is None or len(v) != n or len(omega) != n:
            raise ValueError("rank_one needs a vector and a covector of length n")
        m = ExactMatrix([[Fraction(v[i]) * Fraction(omega[j]) for j in range(n)] for i in range(n)], n)
        if m.is_zero():
            raise ValueError("rank_one needs nonzero v and omega")
        return MatrixSubspace(n, [m], "rank_one")
    raise ValueError(f"unknown matrix algebra kind {kind!r}")


_BUILTIN_RE = re.compile(r"^(co|o|gl|sl):(\d+)$")


def builtin_subspace(spec: str) -> MatrixSubspace:
    m = _BUILTIN_RE.match(spec.strip())
    if not m:
        raise ValueError(f"builtin must look like co:3, o:4, gl:2 or sl:3, got {spec!r}")
    return classical_matrix_algebras(m.group(1), int(m.group(2)))


class MatrixFormatError(ValueError):
    pass


def parse_matrix_subspace(text: str) -> MatrixSubspace:
    """Blocks of whitespace-separated rationals, one matrix per block,
    blocks separated by blank lines; ``#`` starts a comment."""
    blocks: list[list[list[Fraction]]] = [[]]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if blocks[-1]:
                blocks.append([])
            continue
        try:
            blocks[-1].append([parse_rational(tok) for tok in line.split()])
        except ValueError as exc:
            raise MatrixFormatError(f"line {lineno}: {exc}") from None
    blocks = [b for b in blocks if b]
    if not blocks:
        raise MatrixFormatError("no matrices found")
    n = len(blocks[0])
    for idx, b in enumerate(blocks, start=1):
        if len(b) != n or any(len(r) != n for r in b):
            raise MatrixFormatError(f"matrix {idx} is not {n}x{n}")
    try:
        return MatrixSubspace(n, [ExactMatrix(b, n) for b in blocks])
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from None


def serialize_matrix_subspace(space: MatrixSubspace) -> str:
    blocks = ["\n".join(" ".join(format_rational(x) for x in m.row(i)) for i in range(space.n)) for m in space.basis]
    return "\n\n".join(blocks) + "\n"
