"""Rigidity of stratified algebras via minor ideals and Gröbner bases.

Two equivalent rank-one criteria are available: elements ``X`` of the first
stratum (complexified) with ``rank ad X <= 1``, and rank-one elements of
``h^(0)``. Each is a determinantal variety cut out by 2x2 minors; it is
nontrivial exactly when the only-origin test fails.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .algebra import GradedLieAlgebra, StrataDerivation, check_valid, degenerate_subspace, leibniz_defects
from .derivations import MatrixSubspace, h_zero
from .groebner import GroebnerStats, groebner_basis, only_origin, pure_powers_present  # noqa: F401
from .linalg import ExactMatrix, determinant, rank, rref_and_rank, solve_linear
from .poly import MultiPoly, determinant_poly
from .scalars import I, GaussianRational

_ZERO = Fraction(0)
_ONE = Fraction(1)

RIGID = "Rigid"
NONRIGID_DEGENERATE = "NonrigidDegenerate"
NONRIGID_RANK_ONE = "NonrigidRankOne"


class CharacteristicInput(ValueError):
    """The covector is characteristic, so no certificate exists for it."""


class CriterionDisagreement(AssertionError):
    pass


# ---------------------------------------------------------------------------
# minor ideals


def _minors(matrix: Sequence[Sequence[MultiPoly]], n: int) -> list[MultiPoly]:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    nz_rows = [r for r in range(rows) if any(not matrix[r][c].is_zero() for c in range(cols))]
    nz_cols = [c for c in range(cols) if any(not matrix[r][c].is_zero() for r in range(rows))]
    seen = set()
    out = []
    for r1, r2 in combinations(nz_rows, 2):
        for c1, c2 in combinations(nz_cols, 2):
            m = matrix[r1][c1] * matrix[r2][c2] - matrix[r1][c2] * matrix[r2][c1]
            if m.is_zero():
                continue
            canon = m.monic()
            if canon in seen:
                continue
            seen.add(canon)
            out.append(m)
    return out


def generic_ad_matrix(a: GradedLieAlgebra) -> list[list[MultiPoly]]:
    """``ad(sum x_i e_i)`` over the first stratum, entries linear in ``x``."""
    d1 = a.dims[0]
    first = list(a.stratum_indices(1))
    mat = [[MultiPoly(d1) for _ in range(a.dim)] for _ in range(a.dim)]
    for v, x in enumerate(first):
        var = MultiPoly.variable(d1, v)
        for y in range(a.dim):
            for k, c in a.structure_constants(x, y).items():
                mat[k][y] = mat[k][y] + var * c
    return mat


def minor_ideal_adX(a: GradedLieAlgebra) -> list[MultiPoly]:
    """2x2 minors of ``ad(sum x_i e_i)``; variables are first-stratum coordinates."""
    return _minors(generic_ad_matrix(a), a.dims[0])


def minor_ideal_h0(h0: MatrixSubspace) -> list[MultiPoly]:
    """2x2 minors of ``sum z_j A_j`` over a basis ``A_j`` of ``h0``."""
    m = h0.dim
    n = h0.n
    mat = [[MultiPoly(m) for _ in range(n)] for _ in range(n)]
    for j, b in enumerate(h0.basis):
        z = MultiPoly.variable(m, j)
        for r in range(n):
            for c in range(n):
                if b[r, c]:
                    mat[r][c] = mat[r][c] + z * b[r, c]
    return _minors(mat, m)


# ---------------------------------------------------------------------------
# certificate polynomial


def _sigma_rows(g0: MatrixSubspace) -> list[tuple]:
    return g0.annihilator()


def characteristic_certificate(g0: MatrixSubspace, xi: Sequence) -> MultiPoly:
    """Homogeneous degree-``n`` polynomial ``P`` with ``P(xi) = 1`` that
    vanishes on every characteristic covector of ``g0``.

    ``sigma_eta(v) = v (x) eta`` modulo ``span(g0)`` is written with the
    annihilator rows ``Q``; ``B`` is a left inverse of ``sigma_xi`` built from
    ``n`` pivot rows, and ``P(eta) = det(B sigma_eta)``.
    """
    n = g0.n
    if len(xi) != n:
        raise ValueError("covector has the wrong length")
    xi = [Fraction(x) if isinstance(x, int) else x for x in xi]
    q = _sigma_rows(g0)

    def sigma_entry(row, v, l):
        return row[v * n + l]

    if not q:
        raise CharacteristicInput("g0 is all of gl(V): every covector is characteristic")
    s_xi = ExactMatrix(
        [[sum((sigma_entry(r, v, l) * xi[l] for l in range(n)), _ZERO) for v in range(n)] for r in q], n
    )
    # independent rows of S(xi) are the pivots of its transpose
    _, r, pivots = rref_and_rank(s_xi.T)
    if r < n:
        raise CharacteristicInput("sigma_xi is not injective: the covector is characteristic")
    scale = 1 / determinant(ExactMatrix([s_xi.row(p) for p in pivots], n))
    poly_rows = [
        [sum((MultiPoly.variable(n, l) * sigma_entry(q[p], v, l) for l in range(n)), MultiPoly(n)) for v in range(n)]
        for p in pivots
    ]
    return determinant_poly(poly_rows, n) * scale


def is_characteristic(g0: MatrixSubspace, eta: Sequence) -> bool:
    """``eta`` is characteristic iff some nonzero ``v (x) eta`` lies in ``g0``."""
    n = g0.n
    q = _sigma_rows(g0)
    if not q:
        return True
    s = ExactMatrix([[sum((r[v * n + l] * eta[l] for l in range(n)), _ZERO) for v in range(n)] for r in q], n)
    return rank(s) < n


# ---------------------------------------------------------------------------
# witnesses and the constructions between the two criteria


def ad_rank_complex(a: GradedLieAlgebra, x: Sequence) -> int:
    """Rank of ``ad x`` for ``x`` with rational or Gaussian-rational entries."""
    return rank(a.ad_matrix(tuple(x)))


def is_witness(a: GradedLieAlgebra, x: Sequence) -> bool:
    first = set(a.stratum_indices(1))
    if not any(x) or any(c for i, c in enumerate(x) if i not in first):
        return False
    return ad_rank_complex(a, x) <= 1


_REAL_COEFFS = (_ONE, -_ONE, Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(-1, 2))


def witness_search(a: GradedLieAlgebra, budget: int = 200, seed: int = 0) -> Optional[tuple]:
    """Best-effort search for ``X`` in the complexified first stratum with
    ``rank ad X <= 1``. Returns the full-basis coordinates or None.

    Candidates in order: a degenerate vector, basis vectors, ``e_i + c e_j``
    with small real ``c`` then ``c = +-i``, then random small combinations.
    """
    deg = degenerate_subspace(a)
    if deg:
        return deg[0]
    first = list(a.stratum_indices(1))

    def vec(coeffs: dict):
        v = [_ZERO] * a.dim
        for i, c in coeffs.items():
            v[first[i]] = c
        return tuple(v)

    tried = 0

    def candidates():
        for i in range(len(first)):
            yield vec({i: _ONE})
        for i, j in combinations(range(len(first)), 2):
            for c in _REAL_COEFFS:
                yield vec({i: _ONE, j: c})
            for c in (I, -I):
                yield vec({i: _ONE, j: c})
        rng = random.Random(seed)
        while True:
            coeffs = {}
            for i in range(len(first)):
                re_, im_ = rng.randint(-2, 2), rng.randint(-2, 2)
                if re_ or im_:
                    coeffs[i] = GaussianRational(re_, im_) if im_ else Fraction(re_)
            if coeffs:
                yield vec(coeffs)

    for cand in candidates():
        if tried >= budget:
            return None
        tried += 1
        if is_witness(a, cand):
            return cand
    return None


def rank_one_from_witness(a: GradedLieAlgebra, x: Sequence) -> StrataDerivation:
    """Rank-one element ``X (x) omega`` of ``h0`` built from a witness ``X``.

    ``omega`` vanishes on the kernel of ``ad X`` restricted to the first
    stratum; for a degenerate ``X``, ``omega(X) = 1`` is used instead.
    """
    if not is_witness(a, x):
        raise ValueError("not a witness: rank of ad X exceeds 1 or X is outside the first stratum")
    first = list(a.stratum_indices(1))
    d1 = len(first)
    xs = [x[i] for i in first]
    ad = a.ad_matrix(tuple(x))
    block = ExactMatrix([[ad[r, c] for c in first] for r in range(a.dim)], d1)
    if block.is_zero():
        # omega(X) = 1 on the first nonzero coordinate
        k = next(i for i, c in enumerate(xs) if c)
        omega = [_ZERO] * d1
        omega[k] = 1 / xs[k]
    else:
        # ad X|g_-1 = w (x) omega: take the first nonzero row
        r = next(r for r in range(a.dim) if any(block.row(r)))
        omega = list(block.row(r))
    first_block = ExactMatrix([[xs[i] * omega[j] for j in range(d1)] for i in range(d1)], d1)
    blocks = (first_block,) + tuple(ExactMatrix.zeros(d, d) for d in a.dims[1:])
    d = StrataDerivation(blocks)
    if leibniz_defects(a, d.full_matrix()):
        raise AssertionError("constructed rank-one element is not a derivation")
    return d


def witness_from_rank_one(a: GradedLieAlgebra, phi: ExactMatrix) -> tuple:
    """Image vector of a rank-one first-stratum block, as a witness."""
    if phi.shape != (a.dims[0], a.dims[0]) or rank(phi) != 1:
        raise ValueError("expected a rank-one endomorphism of the first stratum")
    c = next(c for c in range(phi.cols) if any(phi.column(c)))
    x = a.embed_stratum(1, phi.column(c))
    if not is_witness(a, x):
        raise AssertionError("image vector of a rank-one element is not a witness")
    return x


def in_complex_span(space: MatrixSubspace, m: ExactMatrix) -> bool:
    """Membership in the complexified span of a rational subspace."""
    if not space.basis:
        return m.is_zero()
    cols = [b.flatten() for b in space.basis]
    a = ExactMatrix.from_columns(cols, space.n * space.n)
    return solve_linear(a, m.flatten()) is not None


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class RigidityVerdict:
    verdict: str
    criterion: str
    witness: Optional[tuple] = None
    rank_one_element: Optional[ExactMatrix] = None
    gb_stats: dict = field(default_factory=dict)
    cross_check: Optional[dict] = None
    notes: list[str] = field(default_factory=list)

    @property
    def rigid(self) -> bool:
        return self.verdict == RIGID


def decide_rank_one(generators: Sequence[MultiPoly], n: int, max_steps: Optional[int] = None) -> tuple[bool, GroebnerStats]:
    """Whether the determinantal ideal has a nonzero complex zero."""
    if n == 0:
        return False, GroebnerStats()
    if not generators:
        return True, GroebnerStats()
    gb = groebner_basis(generators, "grevlex", n, max_steps)
    return not pure_powers_present(gb), gb.stats


def rigidity_verdict(
    a: GradedLieAlgebra,
    cross_check: bool = False,
    witness: bool = True,
    max_steps: Optional[int] = None,
    budget: int = 200,
) -> RigidityVerdict:
    check_valid(a)
    d1 = a.dims[0]
    deg = degenerate_subspace(a)
    if deg:
        v = RigidityVerdict(NONRIGID_DEGENERATE, "degenerate", witness=deg[0])
        if cross_check:
            v.cross_check = _cross_check(a, max_steps)
        return v
    _, space = h_zero(a)
    if space.dim > d1 * d1 - d1:
        v = RigidityVerdict(NONRIGID_RANK_ONE, "dimension-bound")
    else:
        found, stats = decide_rank_one(minor_ideal_adX(a), d1, max_steps)
        v = RigidityVerdict(NONRIGID_RANK_ONE if found else RIGID, "minor-ideal-adX", gb_stats=stats.as_dict())
    if cross_check:
        v.cross_check = _cross_check(a, max_steps, space)
    if v.verdict == NONRIGID_RANK_ONE and witness:
        w = witness_search(a, budget)
        if w is None:
            v.notes.append("no explicit witness found within the search budget")
        else:
            v.witness = w
            v.rank_one_element = rank_one_from_witness(a, w).first_block
    return v


def _cross_check(a: GradedLieAlgebra, max_steps, space: Optional[MatrixSubspace] = None) -> dict:
    if space is None:
        _, space = h_zero(a)
    iii, _ = decide_rank_one(minor_ideal_adX(a), a.dims[0], max_steps)
    ii, _ = decide_rank_one(minor_ideal_h0(space), space.dim, max_steps)
    if ii != iii:
        raise CriterionDisagreement(f"{a.name}: h0 criterion says {ii}, ad criterion says {iii}")
    return {"h0_rank_one": ii, "adX_rank_one": iii, "agree": True}


__all__ = [
    "CharacteristicInput",
    "CriterionDisagreement",
    "NONRIGID_DEGENERATE",
    "NONRIGID_RANK_ONE",
    "RIGID",
    "RigidityVerdict",
    "ad_rank_complex",
    "characteristic_certificate",
    "decide_rank_one",
    "generic_ad_matrix",
    "in_complex_span",
    "is_characteristic",
    "is_witness",
    "minor_ideal_adX",
    "minor_ideal_h0",
    "only_origin",
    "rank_one_from_witness",
    "rigidity_verdict",
    "witness_from_rank_one",
    "witness_search",
]
