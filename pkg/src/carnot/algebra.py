"""Stratified nilpotent Lie algebras with exact structure constants."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .linalg import ExactMatrix, kernel_of_rows, rank, span_rank
from .scalars import format_rational

_ZERO = Fraction(0)


class AlgebraParseError(ValueError):
    """Syntax or consistency error in an algebra file."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class AlgebraValidationError(ValueError):
    """Raised when a constructed algebra fails the stratification axioms."""

    def __init__(self, issues: Sequence["ValidationIssue"]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


@dataclass(frozen=True)
class ValidationIssue:
    kind: str
    detail: str
    where: tuple = ()

    def __str__(self):
        return f"{self.kind}: {self.detail}"


class GradedLieAlgebra:
    """A stratified nilpotent Lie algebra ``g_{-s} + ... + g_{-1}``.

    The global basis lists stratum 1 (the generating stratum) first, then
    stratum 2, and so on. ``brackets`` maps ordered pairs of basis names to
    ``{name: coefficient}``; pairs absent from the mapping bracket to zero.
    Reverse pairs are filled in by antisymmetry unless given explicitly.
    """

    def __init__(
        self,
        name: str,
        strata: Sequence[Sequence[str]],
        brackets: Mapping[tuple[str, str], Mapping[str, object]],
    ):
        self.name = name
        self.strata = tuple(tuple(s) for s in strata)
        self.basis = tuple(b for s in self.strata for b in s)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("duplicate basis name")
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.weights = tuple(j + 1 for j, s in enumerate(self.strata) for _ in s)
        offsets = [0]
        for s in self.strata:
            offsets.append(offsets[-1] + len(s))
        self.offsets = tuple(offsets)
        n = len(self.basis)
        table: list[list[dict[int, Fraction]]] = [[{} for _ in range(n)] for _ in range(n)]
        given = set()
        for (x, y), terms in brackets.items():
            i, j = self.index[x], self.index[y]
            table[i][j] = {self.index[k]: Fraction(c) for k, c in terms.items() if c}
            given.add((i, j))
        for i, j in list(given):
            if (j, i) not in given and i != j:
                table[j][i] = {k: -c for k, c in table[i][j].items()}
        self._table = tuple(tuple(row) for row in table)

    # basic shape
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def step(self) -> int:
        return len(self.strata)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.strata)

    def stratum_indices(self, j: int) -> range:
        """Global indices of the basis of ``g_{-j}`` (``j`` is 1-based)."""
        return range(self.offsets[j - 1], self.offsets[j])

    def structure_constants(self, i: int, j: int) -> Mapping[int, Fraction]:
        return self._table[i][j]

    def bracket_names(self) -> dict[tuple[str, str], dict[str, Fraction]]:
        out = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                t = self._table[i][j]
                if t:
                    out[(self.basis[i], self.basis[j])] = {self.basis[k]: c for k, c in sorted(t.items())}
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedLieAlgebra):
            return NotImplemented
        return (self.name, self.strata, self._table) == (other.name, other.strata, other._table)

    def __hash__(self):
        return hash((self.name, self.strata))

    def __repr__(self):
        return f"GradedLieAlgebra({self.name!r}, dims={self.dims})"

    # vectors
    def element(self, coefficients: Mapping[str, object] | None = None, **kw) -> tuple:
        coeffs = dict(coefficients or {}, **kw)
        v = [_ZERO] * self.dim
        for k, c in coeffs.items():
            v[self.index[k]] = c if not isinstance(c, int) else Fraction(c)
        return tuple(v)

    def basis_vector(self, i: int) -> tuple:
        v = [_ZERO] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def embed_stratum(self, j: int, coords: Sequence) -> tuple:
        v = [_ZERO] * self.dim
        for k, c in zip(self.stratum_indices(j), coords):
            v[k] = c
        return tuple(v)

    def bracket(self, v: Sequence, w: Sequence) -> tuple:
        """Bilinear extension of the structure constants."""
        out = [_ZERO] * self.dim
        for i, a in enumerate(v):
            if not a:
                continue
            row = self._table[i]
            for j, b in enumerate(w):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j].items():
                    out[k] = out[k] + ab * c
        return tuple(out)

    def ad_matrix(self, v: Sequence) -> ExactMatrix:
        """Matrix of ``w -> [v, w]`` in the full graded basis."""
        cols = [self.bracket(v, self.basis_vector(j)) for j in range(self.dim)]
        return ExactMatrix.from_columns(cols, self.dim) if self.dim else ExactMatrix([], 0)

    def format_element(self, v: Sequence) -> str:
        from .scalars import format_scalar

        terms = []
        for name, c in zip(self.basis, v):
            if c:
                s = format_scalar(c)
                terms.append(name if s == "1" else f"-{name}" if s == "-1" else f"({s})*{name}")
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# validation


def validate_structure(a: GradedLieAlgebra) -> list[ValidationIssue]:
    """Check antisymmetry, grading, Jacobi, bracket generation and centrality."""
    issues: list[ValidationIssue] = []
    n, s, B = a.dim, a.step, a.basis
    if any(len(st) == 0 for st in a.strata):
        issues.append(ValidationIssue("EmptyStratum", "every stratum must be nonempty"))
    for i in range(n):
        if a.structure_constants(i, i):
            issues.append(ValidationIssue("AntisymmetryFailure", f"[{B[i]},{B[i]}] != 0", (B[i], B[i])))
        for j in range(i + 1, n):
            cij = a.structure_constants(i, j)
            cji = a.structure_constants(j, i)
            if {k: -c for k, c in cij.items()} != dict(cji):
                issues.append(
                    ValidationIssue("AntisymmetryFailure", f"[{B[i]},{B[j]}] != -[{B[j]},{B[i]}]", (B[i], B[j]))
                )
    for i in range(n):
        for j in range(n):
            target = a.weights[i] + a.weights[j]
            for k in a.structure_constants(i, j):
                if a.weights[k] != target:
                    issues.append(
                        ValidationIssue(
                            "GradingFailure",
                            f"[{B[i]},{B[j]}] has a component on {B[k]} outside stratum {target}",
                            (B[i], B[j]),
                        )
                    )
                    break
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ei, ej, ek = a.basis_vector(i), a.basis_vector(j), a.basis_vector(k)
                t1 = a.bracket(ei, a.bracket(ej, ek))
                t2 = a.bracket(ej, a.bracket(ek, ei))
                t3 = a.bracket(ek, a.bracket(ei, ej))
                if any(x + y + z for x, y, z in zip(t1, t2, t3)):
                    issues.append(
                        ValidationIssue("JacobiFailure", f"Jacobi fails on ({B[i]},{B[j]},{B[k]})", (B[i], B[j], B[k]))
                    )
    for j in range(1, s):
        images = [
            a.bracket(a.basis_vector(x), a.basis_vector(y))
            for x in a.stratum_indices(1)
            for y in a.stratum_indices(j)
        ]
        target = list(a.stratum_indices(j + 1))
        proj = [[v[t] for t in target] for v in images]
        if span_rank(proj, len(target)) < len(target):
            issues.append(
                ValidationIssue(
                    "BracketGenerationFailure",
                    f"[g-1, g-{j}] does not span stratum {j + 1}",
                    (j + 1,),
                )
            )
    if s >= 1:
        for x in a.stratum_indices(s):
            for y in range(n):
                if a.structure_constants(x, y):
                    issues.append(
                        ValidationIssue("CentreFailure", f"{B[x]} in g-{s} is not central", (B[x], B[y]))
                    )
                    break
    return issues


def check_valid(a: GradedLieAlgebra) -> GradedLieAlgebra:
    issues = validate_structure(a)
    if issues:
        raise AlgebraValidationError(issues)
    return a


# ---------------------------------------------------------------------------
# derived data


@dataclass(frozen=True)
class StrataDerivation:
    """A strata-preserving endomorphism stored as one square block per stratum.

    Block ``j`` holds the images of the basis of ``g_{-j}`` as columns.
    """

    blocks: tuple[ExactMatrix, ...]

    def full_matrix(self) -> ExactMatrix:
        n = sum(b.rows for b in self.blocks)
        rows = [[_ZERO] * n for _ in range(n)]
        off = 0
        for b in self.blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    rows[off + i][off + j] = b[i, j]
            off += b.rows
        return ExactMatrix(rows, n)

    def apply(self, v: Sequence) -> tuple:
        return self.full_matrix().apply(v)

    def flat(self) -> tuple:
        return tuple(x for b in self.blocks for x in b.flatten())

    @property
    def first_block(self) -> ExactMatrix:
        return self.blocks[0]

    def __add__(self, other):
        return StrataDerivation(tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def scale(self, c):
        return StrataDerivation(tuple(b.scale(c) for b in self.blocks))


def derivation_from_flat(a: GradedLieAlgebra, flat: Sequence) -> StrataDerivation:
    blocks = []
    pos = 0
    for d in a.dims:
        blocks.append(ExactMatrix([flat[pos + r * d : pos + (r + 1) * d] for r in range(d)], d))
        pos += d * d
    return StrataDerivation(tuple(blocks))


def leibniz_defects(a: GradedLieAlgebra, m: ExactMatrix) -> list[tuple[str, str]]:
    """Basis pairs on which ``m`` violates ``m[X,Y] = [mX,Y] + [X,mY]``."""
    bad = []
    for i in range(a.dim):
        ei = a.basis_vector(i)
        mi = m.apply(ei)
        for j in range(i + 1, a.dim):
            ej = a.basis_vector(j)
            lhs = m.apply(a.bracket(ei, ej))
            r1 = a.bracket(mi, ej)
            r2 = a.bracket(ei, m.apply(ej))
            if any(x - y - z for x, y, z in zip(lhs, r1, r2)):
                bad.append((a.basis[i], a.basis[j]))
    return bad


def degenerate_subspace(a: GradedLieAlgebra) -> list[tuple]:
    """Basis of ``{X in g_-1 : [X, g_-1] = 0}``, embedded in the full basis."""
    first = list(a.stratum_indices(1))
    rows = []
    for y in first:
        for k in range(a.dim):
            rows.append([a.structure_constants(x, y).get(k, _ZERO) for x in first])
    ker = kernel_of_rows(rows, len(first))
    return [a.embed_stratum(1, v) for v in ker]


def grading_derivation(a: GradedLieAlgebra) -> StrataDerivation:
    """The derivation acting as ``j * identity`` on ``g_{-j}``."""
    return StrataDerivation(
        tuple(ExactMatrix.diagonal([Fraction(j + 1)] * d) for j, d in enumerate(a.dims))
    )


def ad_rank(a: GradedLieAlgebra, v: Sequence) -> int:
    return rank(a.ad_matrix(v))


# ---------------------------------------------------------------------------
# file format

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_TERM_RE = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?:(?P<num>\d+)(?:\s*/\s*(?P<den>\d+))?\s*\*?\s*)?(?P<name>{_NAME})\s*"
)
_BRACKET_RE = re.compile(rf"^\s*bracket\s*\[\s*(?P<x>{_NAME})\s*,\s*(?P<y>{_NAME})\s*\]\s*=\s*(?P<rhs>.*)$")
_STRATUM_RE = re.compile(r"^\s*stratum\s+(?P<j>\d+)\s*:(?P<names>.*)$")


def _parse_terms(rhs: str, lineno: int, col0: int) -> dict[str, Fraction]:
    terms: dict[str, Fraction] = {}
    text = rhs.rstrip()
    if text.strip() == "0":
        return terms
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise AlgebraParseError("malformed bracket term", lineno, col0 + pos + 1)
        if not first and m.group("sign") is None:
            raise AlgebraParseError("terms must be separated by + or -", lineno, col0 + pos + 1)
        coef = Fraction(int(m.group("num")) if m.group("num") else 1, int(m.group("den")) if m.group("den") else 1)
        if m.group("sign") == "-":
            coef = -coef
        name = m.group("name")
        terms[name] = terms.get(name, _ZERO) + coef
        pos = m.end()
        first = False
    return {k: v for k, v in terms.items() if v}


def parse_algebra(text: str, validate: bool = True) -> GradedLieAlgebra:
    """Parse the line-oriented algebra format (see README)."""
    name: Optional[str] = None
    step: Optional[int] = None
    strata: dict[int, list[str]] = {}
    brackets: dict[tuple[str, str], dict[str, Fraction]] = {}
    bracket_lines: dict[tuple[str, str], int] = {}
    seen_names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        indent = len(line) - len(line.lstrip())
        keyword = stripped.split()[0]
        if keyword == "name":
            parts = stripped.split()
            if len(parts) != 2 or not re.fullmatch(_NAME, parts[1]):
                raise AlgebraParseError("expected 'name <identifier>'", lineno, indent + 1)
            name = parts[1]
        elif keyword == "step":
            parts = stripped.split()
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise AlgebraParseError("expected 'step <positive integer>'", lineno, indent + 1)
            step = int(parts[1])
        elif keyword.startswith("stratum"):
            m = _STRATUM_RE.match(line)
            if not m:
                raise AlgebraParseError("expected 'stratum <j>: <names>'", lineno, indent + 1)
            j = int(m.group("j"))
            if j in strata:
                raise AlgebraParseError(f"stratum {j} listed twice", lineno, indent + 1)
            names = m.group("names").split()
            for nm in names:
                if not re.fullmatch(_NAME, nm):
                    raise AlgebraParseError(f"invalid basis name {nm!r}", lineno, line.find(nm) + 1)
                if nm in seen_names:
                    raise AlgebraParseError(f"duplicate basis name {nm!r}", lineno, line.find(nm) + 1)
                seen_names.add(nm)
            strata[j] = names
        elif keyword.startswith("bracket"):
            m = _BRACKET_RE.match(line)
            if not m:
                raise AlgebraParseError("expected 'bracket [X,Y] = terms'", lineno, indent + 1)
            x, y = m.group("x"), m.group("y")
            terms = _parse_terms(m.group("rhs"), lineno, m.start("rhs"))
            if (x, y) in brackets:
                raise AlgebraParseError(f"duplicate bracket [{x},{y}]", lineno, indent + 1)
            if (y, x) in brackets:
                if {k: -v for k, v in brackets[(y, x)].items()} != terms:
                    raise AlgebraParseError(
                        f"[{x},{y}] conflicts with [{y},{x}] on line {bracket_lines[(y, x)]}", lineno, indent + 1
                    )
            if x == y and terms:
                raise AlgebraParseError(f"[{x},{x}] must be zero", lineno, indent + 1)
            brackets[(x, y)] = terms
            bracket_lines[(x, y)] = lineno
        else:
            raise AlgebraParseError(f"unknown keyword {keyword!r}", lineno, indent + 1)
    if name is None:
        raise AlgebraParseError("missing 'name' line")
    if not strata:
        raise AlgebraParseError("no strata declared")
    if step is None:
        step = max(strata)
    if sorted(strata) != list(range(1, step + 1)):
        raise AlgebraParseError(f"strata must be numbered 1..{step}")
    for (x, y), terms in brackets.items():
        for nm in (x, y, *terms):
            if nm not in seen_names:
                raise AlgebraParseError(f"unknown basis name {nm!r} in bracket [{x},{y}]", bracket_lines[(x, y)])
    alg = GradedLieAlgebra(name, [strata[j] for j in range(1, step + 1)], brackets)
    if validate:
        check_valid(alg)
    return alg


def serialize_algebra(a: GradedLieAlgebra) -> str:
    lines = [f"name {a.name}", f"step {a.step}"]
    for j, st in enumerate(a.strata, start=1):
        lines.append(f"stratum {j}: " + " ".join(st))
    for (x, y), terms in a.bracket_names().items():
        parts = []
        for k, c in terms.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else format_rational(mag) + " "
            parts.append((sign, coef + k))
        rhs = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            rhs += f" {sign} {body}"
        lines.append(f"bracket [{x},{y}] = {rhs}")
    return "\n".join(lines) + "\n"
