"""Zero-level spaces: strata derivations, the annihilator subalgebra, and
the conformal subalgebra."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import (
    GradedLieAlgebra,
    StrataDerivation,
    derivation_from_flat,
    leibniz_defects,
)
from .linalg import (
    CoordinateSolver,
    ExactMatrix,
    combine,
    commutator,
    is_independent,
    kernel_of_rows,
    row_space_basis,
)

_ZERO = Fraction(0)


class IdentificationNotInjective(RuntimeError):
    """Restriction of h0 to the first stratum lost information."""


class MatrixSubspace:
    """A linearly independent family of ``n x n`` matrices and its span."""

    def __init__(self, n: int, basis: Sequence[ExactMatrix], name: str = ""):
        self.n = n
        self.basis = tuple(basis)
        self.name = name
        for b in self.basis:
            if b.shape != (n, n):
                raise ValueError("basis matrices must be n x n")
        if not is_independent([b.flatten() for b in self.basis], n * n):
            raise ValueError("matrix subspace basis is linearly dependent")
        self._solver = None

    @classmethod
    def spanned_by(cls, n: int, matrices: Sequence[ExactMatrix], name: str = "") -> "MatrixSubspace":
        vecs = row_space_basis([m.flatten() for m in matrices], n * n)
        return cls(n, [_unflatten(v, n) for v in vecs], name)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"MatrixSubspace(n={self.n}, dim={self.dim}{', ' + self.name if self.name else ''})"

    def coordinates(self, m: ExactMatrix):
        """Coordinates of ``m`` in the basis, or None if ``m`` is outside the span."""
        if self._solver is None:
            self._solver = CoordinateSolver([b.flatten() for b in self.basis], self.n * self.n)
        return self._solver.coordinates(m.flatten())

    def __contains__(self, m: ExactMatrix) -> bool:
        return self.coordinates(m) is not None

    def annihilator(self) -> list[tuple]:
        """Rows of a map gl(n) -> gl(n)/span whose kernel is exactly the span."""
        nn = self.n * self.n
        if not self.basis:
            return [tuple(Fraction(int(i == j)) for j in range(nn)) for i in range(nn)]
        return kernel_of_rows([b.flatten() for b in self.basis], nn)

    def is_subalgebra(self) -> bool:
        return all(commutator(a, b) in self for i, a in enumerate(self.basis) for b in self.basis[i + 1 :])


def _unflatten(v: Sequence, n: int) -> ExactMatrix:
    return ExactMatrix([v[i * n : (i + 1) * n] for i in range(n)], n)


def strata_derivations(a: GradedLieAlgebra) -> list[StrataDerivation]:
    """Basis of the strata-preserving derivations g0(n).

    Unknowns are the entries of every diagonal block; the Leibniz rule is
    imposed on all basis pairs.
    """
    n = a.dim
    # unknown (r, c) of the full matrix, only within a stratum block
    var = {}
    for j, d in enumerate(a.dims, start=1):
        idx = list(a.stratum_indices(j))
        for r in idx:
            for c in idx:
                var[(r, c)] = len(var)
    nv = len(var)
    rows = []
    for x in range(n):
        for y in range(x + 1, n):
            cxy = a.structure_constants(x, y)
            eq = [dict() for _ in range(n)]
            # D[X,Y]
            for k, c in cxy.items():
                for t in range(n):
                    v = var.get((t, k))
                    if v is not None:
                        eq[t][v] = eq[t].get(v, _ZERO) + c
            # -[DX, Y] - [X, DY]
            for r in range(n):
                v = var.get((r, x))
                if v is not None:
                    for t, c in a.structure_constants(r, y).items():
                        eq[t][v] = eq[t].get(v, _ZERO) - c
                v = var.get((r, y))
                if v is not None:
                    for t, c in a.structure_constants(x, r).items():
                        eq[t][v] = eq[t].get(v, _ZERO) - c
            for e in eq:
                if any(e.values()):
                    row = [_ZERO] * nv
                    for v, c in e.items():
                        row[v] = c
                    rows.append(row)
    ker = kernel_of_rows(rows, nv)
    # variables were enumerated block by block, row-major, matching derivation_from_flat
    return [derivation_from_flat(a, k) for k in ker]


def h_zero(a: GradedLieAlgebra) -> tuple[list[StrataDerivation], MatrixSubspace]:
    """Derivations vanishing on every stratum below the first, and their
    first-stratum restrictions ``h^(0)`` inside ``gl(g_-1)``."""
    g0 = strata_derivations(a)
    d1 = a.dims[0]
    size = sum(d * d for d in a.dims)
    # coefficient combinations whose blocks below the first stratum vanish
    tail = [d.flat()[d1 * d1 :] for d in g0]
    rows = [[t[i] for t in tail] for i in range(size - d1 * d1)]
    ker = kernel_of_rows(rows, len(g0))
    h0 = [derivation_from_flat(a, combine(k, [d.flat() for d in g0], size)) for k in ker]
    restricted = [d.first_block for d in h0]
    if not is_independent([m.flatten() for m in restricted], d1 * d1):
        raise IdentificationNotInjective(f"{a.name}: restriction of h0 to g-1 is not injective")
    space = MatrixSubspace(d1, restricted, name=f"h0({a.name})")
    if not space.is_subalgebra():
        raise IdentificationNotInjective(f"{a.name}: h^(0) is not closed under commutators")
    return h0, space


def conformal_subalgebra(a: GradedLieAlgebra) -> list[StrataDerivation]:
    """Derivations whose first block ``A`` satisfies ``A + A^T = lambda I``.

    The first stratum basis is treated as orthonormal; ``lambda`` is an extra
    unknown that is eliminated.
    """
    g0 = strata_derivations(a)
    d1 = a.dims[0]
    m = len(g0)
    sym = [(d.first_block + d.first_block.T) for d in g0]
    rows = []
    for i in range(d1):
        for j in range(i, d1):
            row = [s[i, j] for s in sym] + [Fraction(-1) if i == j else _ZERO]
            rows.append(row)
    ker = kernel_of_rows(rows, m + 1)
    coeffs = row_space_basis([k[:m] for k in ker], m) if ker else []
    size = len(g0[0].flat()) if g0 else 0
    return [derivation_from_flat(a, combine(c, [d.flat() for d in g0], size)) for c in coeffs]


def derivation_span_contains(basis: Sequence[StrataDerivation], d: StrataDerivation) -> bool:
    if not basis:
        return not any(d.flat())
    solver = CoordinateSolver([b.flat() for b in basis], len(basis[0].flat()))
    return solver.coordinates(d.flat()) is not None


def check_derivation(a: GradedLieAlgebra, d: StrataDerivation) -> bool:
    return not leibniz_defects(a, d.full_matrix())
