"""Tanaka prolongation of a stratified algebra, full or through a chosen g0.

Level ``k >= 0`` elements are families of component maps ``g_p -> g_{p+k}``
(one per negative stratum) satisfying the Leibniz rule against every basis
pair of the nilpotent part. Brackets between non-negative levels are defined
recursively through the action on the nilpotent part and cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence, Union

from .algebra import GradedLieAlgebra, StrataDerivation, check_valid
from .derivations import (
    MatrixSubspace,
    conformal_subalgebra,
    h_zero,
    strata_derivations,
)
from .linalg import CoordinateSolver, ExactMatrix, combine, kernel_of_rows, row_space_basis

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_MAX_LEVEL = 10


class LevelNotComputed(LookupError):
    pass


class TowerNotTerminated(RuntimeError):
    pass


class ProlongationInvariantError(AssertionError):
    """A structural property that must hold by theory failed on computed data."""


@dataclass(frozen=True)
class ProlongationElement:
    """A level-``k`` element given by its component maps.

    ``components[p-1]`` has one column per basis vector of ``g_{-p}``; the
    rows are coordinates in stratum ``p-k`` when ``k < p`` and in the stored
    basis of level ``k-p`` otherwise.
    """

    level: int
    components: tuple[ExactMatrix, ...]

    def flat(self) -> tuple:
        out = []
        for m in self.components:
            for c in range(m.cols):
                out.extend(m.column(c))
        return tuple(out)

    def image(self, stratum: int, local_index: int) -> tuple:
        return self.components[stratum - 1].column(local_index)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components)


@dataclass(frozen=True)
class TowerStatus:
    kind: str  # "terminated" | "cap"
    level: int

    @property
    def terminated(self) -> bool:
        return self.kind == "terminated"

    def __str__(self):
        return f"TerminatedAt({self.level})" if self.terminated else f"CapReached({self.level})"


G0Selection = Union[str, MatrixSubspace, Sequence[StrataDerivation]]


class ProlongationTower:
    """Graded pieces ``g_0, g_1, ...`` over a stratified algebra."""

    def __init__(self, algebra: GradedLieAlgebra, g0_mode: str, restricted: bool, max_level: int):
        self.algebra = algebra
        self.g0_mode = g0_mode
        self.restricted = restricted
        self.max_level = max_level
        self.levels: list[list[ProlongationElement]] = []
        self.status: Optional[TowerStatus] = None
        self._solvers: list[CoordinateSolver] = []
        self._cache: dict[tuple[int, int, int, int], tuple] = {}

    # -- dimensions ---------------------------------------------------------
    @property
    def step(self) -> int:
        return self.algebra.step

    @property
    def dims(self) -> list[int]:
        """Dimensions of the computed non-negative levels that are nonzero."""
        return [len(lv) for lv in self.levels if lv]

    @property
    def top_level(self) -> int:
        return len(self.levels) - 1

    def dim_at(self, level: int) -> int:
        if level < -self.step:
            return 0
        if level < 0:
            return self.algebra.dims[-level - 1]
        if level < len(self.levels):
            return len(self.levels[level])
        if self.status is not None and self.status.terminated:
            return 0
        raise LevelNotComputed(f"level {level} has not been computed")

    def level_known(self, level: int) -> bool:
        try:
            self.dim_at(level)
        except LevelNotComputed:
            return False
        return True

    # -- element helpers ----------------------------------------------------
    def _component_shapes(self, level: int) -> list[tuple[int, int]]:
        return [(self.dim_at(level - p), d) for p, d in enumerate(self.algebra.dims, start=1)]

    def element_from_flat(self, level: int, flat: Sequence) -> ProlongationElement:
        comps = []
        pos = 0
        for rows, cols in self._component_shapes(level):
            cols_data = [flat[pos + c * rows : pos + (c + 1) * rows] for c in range(cols)]
            comps.append(ExactMatrix.from_columns(cols_data, rows) if rows else ExactMatrix([], cols))
            pos += rows * cols
        return ProlongationElement(level, tuple(comps))

    def combination(self, level: int, coords: Sequence) -> ProlongationElement:
        basis = self.levels[level]
        size = len(basis[0].flat()) if basis else 0
        return self.element_from_flat(level, combine(coords, [b.flat() for b in basis], size))

    def coordinates(self, element: ProlongationElement) -> Optional[tuple]:
        """Coordinates of ``element`` in the stored basis of its level."""
        if element.level >= len(self.levels):
            if self.dim_at(element.level) == 0:
                return () if element.is_zero() else None
        return self._solvers[element.level].coordinates(element.flat())

    # -- brackets -----------------------------------------------------------
    def _stratum_bracket(self, p: int, i: int, q: int, j: int) -> tuple:
        a = self.algebra
        x = a.offsets[p - 1] + i
        y = a.offsets[q - 1] + j
        r = p + q
        if r > a.step:
            return ()
        c = a.structure_constants(x, y)
        return tuple(c.get(a.offsets[r - 1] + t, _ZERO) for t in range(a.dims[r - 1]))

    def basis_bracket(self, la: int, i: int, lb: int, j: int) -> tuple:
        """Bracket of basis element ``i`` of level ``la`` with basis element
        ``j`` of level ``lb``, as coordinates at level ``la + lb``."""
        key = (la, i, lb, j)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if la < 0 and lb < 0:
            res = self._stratum_bracket(-la, i, -lb, j)
        elif la >= 0 and lb < 0:
            if self.dim_at(la + lb) == 0:
                res = ()
            else:
                res = self.levels[la][i].image(-lb, j)
        elif la < 0:
            res = tuple(-x for x in self.basis_bracket(lb, j, la, i))
        else:
            res = self._bracket_nonnegative(la, i, lb, j)
        self._cache[key] = res
        return res

    def _bracket_nonnegative(self, la: int, i: int, lb: int, j: int) -> tuple:
        target = la + lb
        if target > self.top_level and not (self.status and self.status.terminated):
            raise LevelNotComputed(f"bracket lands in uncomputed level {target}")
        comps = []
        for p, d in enumerate(self.algebra.dims, start=1):
            rows = self.dim_at(target - p)
            cols = []
            for x in range(d):
                vx = self.basis_bracket(lb, j, -p, x)
                ux = self.basis_bracket(la, i, -p, x)
                first = self.bracket((la, self._unit(la, i)), (lb - p, vx))
                second = self.bracket((lb, self._unit(lb, j)), (la - p, ux))
                cols.append(tuple(f - s for f, s in zip(first, second)) if rows else ())
            comps.append(ExactMatrix.from_columns(cols, rows) if rows else ExactMatrix([], d))
        elem = ProlongationElement(target, tuple(comps))
        if target >= len(self.levels):
            if not elem.is_zero():
                raise ProlongationInvariantError(
                    f"bracket of levels {la} and {lb} is nonzero beyond termination"
                )
            return ()
        coords = self.coordinates(elem)
        if coords is None:
            raise ProlongationInvariantError(
                f"bracket of levels {la} and {lb} leaves the computed level {target}"
            )
        return coords

    def _unit(self, level: int, i: int) -> tuple:
        v = [_ZERO] * self.dim_at(level)
        v[i] = _ONE
        return tuple(v)

    def bracket(self, u: tuple[int, Sequence], v: tuple[int, Sequence]) -> tuple:
        """Bracket of homogeneous elements given as ``(level, coordinates)``."""
        la, cu = u
        lb, cv = v
        dim = self.dim_at(la + lb)
        out = [_ZERO] * dim
        if dim == 0:
            return ()
        for i, a in enumerate(cu):
            if not a:
                continue
            for j, b in enumerate(cv):
                if not b:
                    continue
                ab = a * b
                for t, c in enumerate(self.basis_bracket(la, i, lb, j)):
                    if c:
                        out[t] = out[t] + ab * c
        return tuple(out)

    def apply(self, element: ProlongationElement, p: int, coords: Sequence) -> tuple:
        """``[element, X]`` for ``X`` in ``g_{-p}`` given in stratum coordinates."""
        m = element.components[p - 1]
        return m.apply(coords) if m.rows else ()

    # -- solving ------------------------------------------------------------
    def leibniz_system(self, level: int) -> tuple[list[list], int]:
        """Rows of the linear system cut out by the Leibniz rule at ``level``."""
        a = self.algebra
        shapes = self._component_shapes(level)
        offsets = [0]
        for rows, cols in shapes:
            offsets.append(offsets[-1] + rows * cols)
        nv = offsets[-1]

        def var(p, col, r):
            return offsets[p - 1] + col * shapes[p - 1][0] + r

        eqs = []
        for x in range(a.dim):
            p = a.weights[x]
            xl = x - a.offsets[p - 1]
            for y in range(x + 1, a.dim):
                q = a.weights[y]
                yl = y - a.offsets[q - 1]
                tgt = level - p - q
                dt = self.dim_at(tgt)
                if dt == 0:
                    continue
                eq = [dict() for _ in range(dt)]
                # phi([X,Y])
                if p + q <= a.step:
                    for z, c in a.structure_constants(x, y).items():
                        zl = z - a.offsets[p + q - 1]
                        for r in range(dt):
                            vi = var(p + q, zl, r)
                            eq[r][vi] = eq[r].get(vi, _ZERO) + c
                # - [phi X, Y]
                for r in range(self.dim_at(level - p)):
                    img = self.basis_bracket(level - p, r, -q, yl)
                    vi = var(p, xl, r)
                    for t, c in enumerate(img):
                        if c:
                            eq[t][vi] = eq[t].get(vi, _ZERO) - c
                # + [phi Y, X]
                for r in range(self.dim_at(level - q)):
                    img = self.basis_bracket(level - q, r, -p, xl)
                    vi = var(q, yl, r)
                    for t, c in enumerate(img):
                        if c:
                            eq[t][vi] = eq[t].get(vi, _ZERO) + c
                for e in eq:
                    if any(e.values()):
                        row = [_ZERO] * nv
                        for vi, c in e.items():
                            row[vi] = c
                        eqs.append(row)
        return eqs, nv

    def solve_level(self, level: int) -> list[ProlongationElement]:
        """Canonical basis of the solutions at ``level`` (not stored)."""
        rows, nv = self.leibniz_system(level)
        return [self.element_from_flat(level, k) for k in kernel_of_rows(rows, nv)]

    def _store_level(self, basis: list[ProlongationElement]):
        level = len(self.levels)
        self.levels.append(basis)
        size = len(basis[0].flat()) if basis else sum(r * c for r, c in self._component_shapes(level))
        self._solvers.append(CoordinateSolver([b.flat() for b in basis], size))

    def probe_level(self, level: int) -> int:
        """Dimension of the solution space one past termination (for checks)."""
        if level != len(self.levels):
            raise ValueError("can only probe the level right after the last stored one")
        return len(self.solve_level(level))

    # -- Leibniz re-check ---------------------------------------------------
    def leibniz_defects(self, element: ProlongationElement) -> list[tuple[str, str]]:
        """Evaluate ``phi[X,Y] - [phi X, Y] - [X, phi Y]`` on every basis pair."""
        a = self.algebra
        k = element.level
        bad = []
        for x in range(a.dim):
            p = a.weights[x]
            xl = x - a.offsets[p - 1]
            for y in range(x + 1, a.dim):
                q = a.weights[y]
                yl = y - a.offsets[q - 1]
                tgt = k - p - q
                if self.dim_at(tgt) == 0:
                    continue
                if p + q <= a.step:
                    xy = self._stratum_bracket(p, xl, q, yl)
                    lhs = self.apply(element, p + q, xy)
                else:
                    lhs = (_ZERO,) * self.dim_at(tgt)
                phx = (k - p, element.image(p, xl))
                phy = (k - q, element.image(q, yl))
                ex = (-p, self._unit(-p, xl))
                ey = (-q, self._unit(-q, yl))
                r1 = self.bracket(phx, ey)
                r2 = self.bracket(ex, phy)
                if any(l - s - t for l, s, t in zip(lhs, r1, r2)):
                    bad.append((a.basis[x], a.basis[y]))
        return bad

    # -- whole-tower checks -------------------------------------------------
    def homogeneous_basis(self) -> list[tuple[int, int]]:
        out = [(-p, i) for p in range(self.step, 0, -1) for i in range(self.algebra.dims[p - 1])]
        out += [(k, i) for k, lv in enumerate(self.levels) for i in range(len(lv))]
        return out

    def jacobi_failures(self) -> list[tuple]:
        """Basis triples (within computed levels) violating Jacobi."""
        basis = self.homogeneous_basis()
        bad = []
        n = len(basis)
        for ia in range(n):
            for ib in range(ia, n):
                for ic in range(ib, n):
                    (la, i), (lb, j), (lc, k) = basis[ia], basis[ib], basis[ic]
                    sums = (la + lb, lb + lc, la + lc, la + lb + lc)
                    if not all(self.level_known(s) for s in sums):
                        continue
                    if self.dim_at(la + lb + lc) == 0:
                        continue
                    u, v, w = (la, self._unit(la, i)), (lb, self._unit(lb, j)), (lc, self._unit(lc, k))
                    t1 = self.bracket(u, (lb + lc, self.basis_bracket(lb, j, lc, k)))
                    t2 = self.bracket(v, (la + lc, self.basis_bracket(lc, k, la, i)))
                    t3 = self.bracket(w, (la + lb, self.basis_bracket(la, i, lb, j)))
                    if any(x + y + z for x, y, z in zip(t1, t2, t3)):
                        bad.append((basis[ia], basis[ib], basis[ic]))
        return bad

    def check_closure(self) -> None:
        """Brackets of stored non-negative levels land in stored levels."""
        for la in range(len(self.levels)):
            for lb in range(la, len(self.levels)):
                if not self.level_known(la + lb):
                    continue
                for i in range(len(self.levels[la])):
                    for j in range(len(self.levels[lb])):
                        self.basis_bracket(la, i, lb, j)


def bracket_in_tower(t: ProlongationTower, u: tuple[int, Sequence], v: tuple[int, Sequence]) -> tuple:
    """``[u, v]`` for homogeneous ``(level, coordinates)`` pairs; negative
    levels are strata of the nilpotent part."""
    return t.bracket(u, v)


def _g0_basis(a: GradedLieAlgebra, g0: G0Selection) -> tuple[str, list[StrataDerivation]]:
    if isinstance(g0, str):
        if g0 == "full":
            return "full", strata_derivations(a)
        if g0 == "conformal":
            return "conformal", conformal_subalgebra(a)
        if g0 == "h0":
            return "h0", h_zero(a)[0]
        raise ValueError(f"unknown g0 selection {g0!r}")
    if isinstance(g0, MatrixSubspace):
        return "custom", derivations_restricting_into(a, g0)
    return "custom", list(g0)


def derivations_restricting_into(a: GradedLieAlgebra, space: MatrixSubspace) -> list[StrataDerivation]:
    """Strata derivations whose first block lies in ``space``."""
    from .algebra import derivation_from_flat

    g0 = strata_derivations(a)
    ann = space.annihilator()
    firsts = [d.first_block.flatten() for d in g0]
    rows = [[sum((q[t] * f[t] for t in range(len(q)) if q[t] and f[t]), _ZERO) for f in firsts] for q in ann]
    ker = kernel_of_rows(rows, len(g0))
    size = len(g0[0].flat())
    return [derivation_from_flat(a, combine(k, [d.flat() for d in g0], size)) for k in ker]


def prolong_tower(
    a: GradedLieAlgebra,
    g0_mode: G0Selection = "full",
    max_level: int = DEFAULT_MAX_LEVEL,
    restricted: Optional[bool] = None,
) -> ProlongationTower:
    """Compute levels ``0..max_level`` or stop at the first zero level.

    ``g0_mode`` is ``"full"`` (all strata derivations), ``"conformal"``,
    ``"h0"``, a :class:`MatrixSubspace` of ``gl(g_-1)``, or an explicit list of
    derivations spanning a subalgebra. Anything but ``"full"`` is a restricted
    prolongation.
    """
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    check_valid(a)
    mode, g0 = _g0_basis(a, g0_mode)
    if restricted is None:
        restricted = mode != "full"
    if restricted and mode == "full":
        raise ValueError("restricted prolongation needs a proper g0 selection (conformal, h0 or custom)")
    if not restricted and mode != "full":
        raise ValueError("a g0 selection other than 'full' is only meaningful with restricted=True")
    tower = ProlongationTower(a, mode, restricted, max_level)
    if mode == "full":
        level0 = tower.solve_level(0)
    else:
        flats = row_space_basis([d.full_matrix().flatten() for d in g0], a.dim * a.dim)
        _check_subalgebra(a, g0)
        level0 = [
            tower.element_from_flat(0, _derivation_to_flat(a, _full_to_derivation(a, f)))
            for f in flats
        ]
    tower._store_level(level0)
    for k in range(0, max_level + 1):
        if k > 0:
            tower._store_level(tower.solve_level(k))
        if not tower.levels[k]:
            tower.status = TowerStatus("terminated", k)
            return tower
    tower.status = TowerStatus("cap", max_level)
    return tower


def _check_subalgebra(a: GradedLieAlgebra, ders: Sequence[StrataDerivation]):
    if not ders:
        return
    mats = [d.full_matrix() for d in ders]
    solver = CoordinateSolver(row_space_basis([m.flatten() for m in mats], a.dim * a.dim), a.dim * a.dim)
    for i, x in enumerate(mats):
        for y in mats[i + 1 :]:
            if solver.coordinates(((x @ y) - (y @ x)).flatten()) is None:
                raise ValueError("g0 selection is not closed under commutators")


def _full_to_derivation(a: GradedLieAlgebra, flat: Sequence) -> StrataDerivation:
    n = a.dim
    blocks = []
    for j, d in enumerate(a.dims, start=1):
        idx = list(a.stratum_indices(j))
        blocks.append(ExactMatrix([[flat[r * n + c] for c in idx] for r in idx], d))
    return StrataDerivation(tuple(blocks))


def _derivation_to_flat(a: GradedLieAlgebra, d: StrataDerivation) -> tuple:
    # level-0 components are the blocks, flattened column by column
    out = []
    for b in d.blocks:
        for c in range(b.cols):
            out.extend(b.column(c))
    return tuple(out)


def derivation_as_element(tower: ProlongationTower, d: StrataDerivation) -> ProlongationElement:
    return tower.element_from_flat(0, _derivation_to_flat(tower.algebra, d))


def element_as_derivation(e: ProlongationElement) -> StrataDerivation:
    if e.level != 0:
        raise ValueError("only level-0 elements are derivations")
    return StrataDerivation(tuple(e.components))


# ---------------------------------------------------------------------------
# h_k spaces


def h_spaces(t: ProlongationTower, upto: Optional[int] = None) -> list[list[tuple]]:
    """Per level, coordinates (in the level basis) of a basis of
    ``h_k = {u in g_k : [u, g_-j] = 0 for j >= 2}``.

    The inclusion ``[h_k, g_-1] ⊆ h_{k-1}`` is verified on the way.
    """
    top = t.top_level if upto is None else upto
    if top > t.top_level:
        raise LevelNotComputed(f"level {top} has not been computed")
    out: list[list[tuple]] = []
    for k in range(top + 1):
        basis = t.levels[k]
        m = len(basis)
        deep = [sum((list(b.components[p - 1].flatten()) for p in range(2, t.step + 1)), []) for b in basis]
        rows = [[deep[i][r] for i in range(m)] for r in range(len(deep[0]) if deep else 0)]
        hk = kernel_of_rows(rows, m) if m else []
        out.append(hk)
        if k >= 1 and hk:
            prev = out[k - 1]
            solver = CoordinateSolver(prev, len(t.levels[k - 1])) if prev else None
            for u in hk:
                for x in range(t.algebra.dims[0]):
                    img = t.bracket((k, u), (-1, t._unit(-1, x)))
                    ok = (not any(img)) if solver is None else solver.coordinates(img) is not None
                    if not ok:
                        raise ProlongationInvariantError(f"[h_{k}, g_-1] is not contained in h_{k - 1}")
    return out


# ---------------------------------------------------------------------------
# export


@dataclass
class LieTable:
    """Structure constants of a finite-dimensional algebra on named basis."""

    names: list[str]
    levels: list[int]
    table: list[list[tuple]]  # table[i][j] = coordinates of [e_i, e_j]
    jacobi_failures: list[tuple] = field(default_factory=list)

    def entry(self, x: str, y: str) -> dict[str, Fraction]:
        i, j = self.names.index(x), self.names.index(y)
        return {self.names[k]: c for k, c in enumerate(self.table[i][j]) if c}

    @property
    def dim(self) -> int:
        return len(self.names)


def _default_names(t: ProlongationTower) -> list[str]:
    names = [n for p in range(t.step, 0, -1) for n in t.algebra.strata[p - 1]]
    for k, lv in enumerate(t.levels):
        names += [f"g{k}_{i + 1}" for i in range(len(lv))]
    return names


def export_graded_algebra(
    t: ProlongationTower,
    basis_change: Optional[Sequence[tuple[str, Sequence]]] = None,
) -> LieTable:
    """Full bracket table of the terminated tower, Jacobi checked.

    ``basis_change`` lists ``(name, coordinates in the default basis)`` for a
    new homogeneous basis; the table is then re-expressed in it.
    """
    if not (t.status and t.status.terminated):
        raise TowerNotTerminated("export needs a terminated tower")
    hb = t.homogeneous_basis()
    n = len(hb)
    pos = {}
    for idx, (lv, i) in enumerate(hb):
        pos[(lv, i)] = idx
    start = {}
    for idx, (lv, i) in enumerate(hb):
        start.setdefault(lv, idx)
    table = [[None] * n for _ in range(n)]
    for a_idx, (la, i) in enumerate(hb):
        for b_idx, (lb, j) in enumerate(hb):
            v = [_ZERO] * n
            tgt = la + lb
            coords = t.basis_bracket(la, i, lb, j) if t.dim_at(tgt) else ()
            for k, c in enumerate(coords):
                if c:
                    v[start[tgt] + k] = c
            table[a_idx][b_idx] = tuple(v)
    names = _default_names(t)
    levels = [lv for lv, _ in hb]
    if basis_change is not None:
        names, levels, table = _rebase(names, levels, table, basis_change)
    lt = LieTable(names, levels, table)
    lt.jacobi_failures = table_jacobi_failures(lt)
    return lt


def _rebase(names, levels, table, basis_change):
    n = len(names)
    if len(basis_change) != n:
        raise ValueError("basis change must list a full basis")
    new_vectors = [tuple(Fraction(x) if isinstance(x, int) else x for x in vec) for _, vec in basis_change]
    solver = CoordinateSolver(new_vectors, n)
    new_levels = []
    for vec in new_vectors:
        lv = {levels[k] for k, c in enumerate(vec) if c}
        if len(lv) != 1:
            raise ValueError("basis change vectors must be homogeneous")
        new_levels.append(lv.pop())

    def br(u, v):
        out = [_ZERO] * n
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        for k, c in enumerate(table[i][j]):
                            if c:
                                out[k] = out[k] + a * b * c
        return out

    new_table = [[solver.coordinates(br(u, v)) for v in new_vectors] for u in new_vectors]
    return [nm for nm, _ in basis_change], new_levels, new_table


def table_jacobi_failures(lt: LieTable) -> list[tuple]:
    n = lt.dim

    def br(u, v):
        out = [_ZERO] * n
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        for k, c in enumerate(lt.table[i][j]):
                            if c:
                                out[k] = out[k] + a * b * c
        return out

    unit = [tuple(_ONE if k == i else _ZERO for k in range(n)) for i in range(n)]
    bad = []
    for i, j, k in combinations_with_replacement(range(n), 3):
        s = [
            x + y + z
            for x, y, z in zip(
                br(unit[i], lt.table[j][k]), br(unit[j], lt.table[k][i]), br(unit[k], lt.table[i][j])
            )
        ]
        if any(s):
            bad.append((lt.names[i], lt.names[j], lt.names[k]))
    for i in range(n):
        for j in range(n):
            if any(a + b for a, b in zip(lt.table[i][j], lt.table[j][i])):
                bad.append((lt.names[i], lt.names[j]))
    return bad


# ---------------------------------------------------------------------------
# the su(1,2) basis of the conformal Heisenberg prolongation


def su12_elements(t: ProlongationTower) -> dict[str, ProlongationElement]:
    """The explicit elements A1, A2, B1, B2, C2 of the conformal prolongation
    of the 3-dimensional Heisenberg algebra, in the tower's coordinates."""
    a = t.algebra
    if a.strata != (("X1", "X2"), ("Y",)) or a.bracket_names() != {("X1", "X2"): {"Y": Fraction(1)}}:
        raise ValueError("su12 basis change needs heisenberg(3) with [X1,X2] = Y")
    if t.dims[:3] != [2, 2, 1] or not t.status.terminated:
        raise ValueError("su12 basis change needs the terminated conformal tower with dims [2, 2, 1]")
    h = Fraction(1, 2)
    A1 = derivation_as_element(
        t, StrataDerivation((ExactMatrix([[h, 0], [0, h]]), ExactMatrix([[1]])))
    )
    # A2 = X1 (x) dx2 - X2 (x) dx1
    A2 = derivation_as_element(t, StrataDerivation((ExactMatrix([[0, 1], [-1, 0]]), ExactMatrix([[0]]))))
    cA1, cA2 = _coords_or_fail(t, A1, "A1"), _coords_or_fail(t, A2, "A2")

    def lin(*pairs):
        return tuple(sum((Fraction(c) * v[k] for c, v in pairs), _ZERO) for k in range(len(pairs[0][1])))

    def level_element(level, first_cols, second_col):
        comps = (ExactMatrix.from_columns(first_cols, len(first_cols[0])), ExactMatrix.from_columns([second_col], len(second_col)))
        return ProlongationElement(level, comps)

    # B1 = A1 dx1 - 3/2 A2 dx2 - X2 dy ; B2 = A1 dx2 + 3/2 A2 dx1 + X1 dy
    B1 = level_element(1, [cA1, lin((Fraction(-3, 2), cA2))], (_ZERO, Fraction(-1)))
    B2 = level_element(1, [lin((Fraction(3, 2), cA2)), cA1], (_ONE, _ZERO))
    cB1, cB2 = _coords_or_fail(t, B1, "B1"), _coords_or_fail(t, B2, "B2")
    # C2 = 1/2 B2 dx1 - 1/2 B1 dx2 + A1 dy
    C2 = level_element(2, [lin((h, cB2)), lin((-h, cB1))], cA1)
    _coords_or_fail(t, C2, "C2")
    return {"A1": A1, "A2": A2, "B1": B1, "B2": B2, "C2": C2}


def _coords_or_fail(t, e, label):
    if t.leibniz_defects(e):
        raise ProlongationInvariantError(f"{label} violates the Leibniz rule")
    c = t.coordinates(e)
    if c is None:
        raise ProlongationInvariantError(f"{label} is not in the computed level {e.level}")
    return c


def su12_basis_change(t: ProlongationTower) -> list[tuple[str, tuple]]:
    """``H1 = 2 A1, H2 = A2, Xb1 = 2 B1, Xb2 = 2 B2, Yb = -4 C2`` in the
    default export basis (ordered Y, X1, X2, level 0, level 1, level 2)."""
    els = su12_elements(t)
    n = sum(t.algebra.dims) + sum(len(lv) for lv in t.levels)
    start = {0: 3, 1: 3 + len(t.levels[0]), 2: 3 + len(t.levels[0]) + len(t.levels[1])}

    def vec(scale, e):
        v = [_ZERO] * n
        for k, c in enumerate(t.coordinates(e)):
            v[start[e.level] + k] = Fraction(scale) * c
        return tuple(v)

    def unit(k):
        return tuple(_ONE if i == k else _ZERO for i in range(n))

    return [
        ("Y", unit(0)),
        ("X1", unit(1)),
        ("X2", unit(2)),
        ("H1", vec(2, els["A1"])),
        ("H2", vec(1, els["A2"])),
        ("Xb1", vec(2, els["B1"])),
        ("Xb2", vec(2, els["B2"])),
        ("Yb", vec(-4, els["C2"])),
    ]


BASIS_CHANGES = {"su12": su12_basis_change}


# ---------------------------------------------------------------------------
# rank-one persistence


def rank_one_tower_element(t: ProlongationTower, level: int, v0: Sequence, omega: Sequence) -> ProlongationElement:
    """Level-``level`` element acting as ``X -> omega(X) u_{level-1}`` on the
    first stratum and zero deeper, starting from ``u_0 = v0 (x) omega``.

    Each intermediate element is re-checked and located in the stored basis.
    """
    a = t.algebra
    d1 = a.dims[0]
    first = ExactMatrix([[Fraction(v0[i]) * Fraction(omega[j]) for j in range(d1)] for i in range(d1)], d1)
    blocks = [first] + [ExactMatrix.zeros(d, d) for d in a.dims[1:]]
    elem = derivation_as_element(t, StrataDerivation(tuple(blocks)))
    for k in range(1, level + 1):
        prev = _coords_or_fail(t, elem, f"rank-one element at level {k - 1}")
        cols = [tuple(Fraction(omega[j]) * c for c in prev) for j in range(d1)]
        comps = [ExactMatrix.from_columns(cols, len(prev))]
        for p, d in enumerate(a.dims[1:], start=2):
            rows = t.dim_at(k - p)
            comps.append(ExactMatrix.zeros(rows, d) if rows else ExactMatrix([], d))
        elem = ProlongationElement(k, tuple(comps))
    return elem
