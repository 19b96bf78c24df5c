"""Reduced Gröbner bases by Buchberger's algorithm and the only-origin test."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .poly import MultiPoly, divides, lcm, order_key


class PartialComputation(RuntimeError):
    """The step budget ran out before the basis was complete."""

    def __init__(self, message: str, steps: int):
        super().__init__(message)
        self.steps = steps


class NonHomogeneousInput(ValueError):
    pass


@dataclass
class GroebnerStats:
    pairs_considered: int = 0
    reductions_to_zero: int = 0
    coprime_skips: int = 0
    chain_skips: int = 0
    max_degree: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class GroebnerBasis:
    generators: tuple[MultiPoly, ...]
    order: str
    n: int
    stats: GroebnerStats = field(default_factory=GroebnerStats)

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def normal_form(self, p: MultiPoly) -> MultiPoly:
        return normal_form(p, self)

    def contains(self, p: MultiPoly) -> bool:
        return normal_form(p, self).is_zero()

    def is_unit(self) -> bool:
        return any(sum(e) == 0 for e in self.leading_monomials())

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _reduce(p: MultiPoly, basis: Sequence[MultiPoly], leads: Sequence, order: str) -> MultiPoly:
    key = order_key(order)
    n = p.n
    work = dict(p.terms)
    rem: dict = {}
    while work:
        e = max(work, key=key)
        c = work[e]
        for g, (ge, gc) in zip(basis, leads):
            if divides(ge, e):
                shift = tuple(a - b for a, b in zip(e, ge))
                f = c / gc
                for te, tc in g.terms.items():
                    ne = tuple(a + b for a, b in zip(te, shift))
                    v = work.get(ne, 0) - f * tc
                    if v:
                        work[ne] = v
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[e] = c
            del work[e]
    return MultiPoly(n, rem)


def normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    if p.n != gb.n:
        raise ValueError("polynomial and basis live in different rings")
    leads = [g.leading(gb.order) for g in gb.generators]
    return _reduce(p, gb.generators, leads, gb.order)


def _spoly(f: MultiPoly, g: MultiPoly, order: str) -> MultiPoly:
    fe, fc = f.leading(order)
    ge, gc = g.leading(order)
    m = lcm(fe, ge)
    a = f.mul_term(tuple(x - y for x, y in zip(m, fe)), 1 / fc)
    b = g.mul_term(tuple(x - y for x, y in zip(m, ge)), 1 / gc)
    return a - b


def groebner_basis(
    generators: Sequence[MultiPoly],
    order: str = "grevlex",
    n: Optional[int] = None,
    max_steps: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis with the coprime and chain criteria
    (Gebauer–Möller update) and sugar pair selection.

    ``max_steps`` bounds the number of S-polynomial reductions; exceeding it
    raises :class:`PartialComputation`.
    """
    gens = [g for g in generators if not g.is_zero()]
    if n is None:
        if not generators:
            raise ValueError("variable count needed for an empty generator list")
        n = generators[0].n
    if any(g.n != n for g in generators):
        raise ValueError("generators live in different rings")
    key = order_key(order)
    stats = GroebnerStats()
    if not gens:
        return GroebnerBasis((), order, n, stats)

    polys: list[MultiPoly] = []
    sugar: list[int] = []
    lead: list = []
    active: list[int] = []
    pairs: list[tuple[int, int]] = []

    def pair_sugar(i, j):
        m = lcm(lead[i][0], lead[j][0])
        d = sum(m)
        return max(sugar[i] + d - sum(lead[i][0]), sugar[j] + d - sum(lead[j][0]))

    def update(h: int):
        nonlocal pairs, active
        he = lead[h][0]
        cand = [(g, lcm(lead[g][0], he)) for g in active]
        kept = []
        for idx, (g, m) in enumerate(cand):
            coprime = all(not (x and y) for x, y in zip(lead[g][0], he))
            if coprime:
                kept.append((g, m, True))
                continue
            others = [c[1] for c in cand[idx + 1 :]] + [k[1] for k in kept]
            if any(divides(o, m) for o in others):
                stats.chain_skips += 1
                continue
            kept.append((g, m, False))
        new_pairs = []
        for g, m, coprime in kept:
            if coprime:
                stats.coprime_skips += 1
            else:
                new_pairs.append((g, h))
        survivors = []
        for i, j in pairs:
            m = lcm(lead[i][0], lead[j][0])
            if divides(he, m) and lcm(lead[i][0], he) != m and lcm(lead[j][0], he) != m:
                stats.chain_skips += 1
                continue
            survivors.append((i, j))
        pairs = survivors + new_pairs
        active = [g for g in active if not divides(he, lead[g][0])] + [h]

    def add(p: MultiPoly, s: int):
        p = p.monic(order)
        polys.append(p)
        sugar.append(s)
        lead.append(p.leading(order))
        stats.max_degree = max(stats.max_degree, p.total_degree)
        update(len(polys) - 1)

    # deterministic insertion order: ascending leading monomial
    for g in sorted((g.monic(order) for g in gens), key=lambda p: (key(p.leading_monomial(order)), sorted(p.terms.items()))):
        r = _reduce(g, [polys[i] for i in active], [lead[i] for i in active], order)
        if not r.is_zero():
            add(r, g.total_degree)

    steps = 0
    while pairs:
        pairs.sort(key=lambda ij: (pair_sugar(*ij), key(lcm(lead[ij[0]][0], lead[ij[1]][0])), ij))
        i, j = pairs.pop(0)
        stats.pairs_considered += 1
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise PartialComputation(f"Gröbner step budget of {max_steps} exhausted", steps - 1)
        s = _spoly(polys[i], polys[j], order)
        r = _reduce(s, [polys[k] for k in active], [lead[k] for k in active], order)
        if r.is_zero():
            stats.reductions_to_zero += 1
            continue
        add(r, pair_sugar(i, j))

    return GroebnerBasis(tuple(_reduced([polys[k] for k in active], order)), order, n, stats)


def _reduced(basis: list[MultiPoly], order: str) -> list[MultiPoly]:
    key = order_key(order)
    basis = [b.monic(order) for b in basis]
    minimal = []
    for i, b in enumerate(basis):
        be = b.leading_monomial(order)
        dominated = False
        for j, c in enumerate(basis):
            if i == j:
                continue
            ce = c.leading_monomial(order)
            if divides(ce, be) and (ce != be or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(b)
    out = []
    for i, b in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = _reduce(b, others, [o.leading(order) for o in others], order).monic(order)
        out.append(r)
    out.sort(key=lambda p: key(p.leading_monomial(order)), reverse=True)
    return out


def only_origin(generators: Sequence[MultiPoly], n: Optional[int] = None, max_steps: Optional[int] = None) -> bool:
    """True iff the homogeneous ideal has only the origin as a common complex zero."""
    if n is None:
        if not generators:
            raise ValueError("variable count needed for an empty generator list")
        n = generators[0].n
    gens = [g for g in generators if not g.is_zero()]
    for g in gens:
        if not g.is_homogeneous() or g.total_degree < 1:
            raise NonHomogeneousInput("only_origin needs homogeneous generators of positive degree")
    if n == 0:
        return True
    if not gens:
        return False
    return pure_powers_present(groebner_basis(gens, "grevlex", n, max_steps))


def pure_powers_present(gb: GroebnerBasis) -> bool:
    seen = set()
    for e in gb.leading_monomials():
        support = [i for i, x in enumerate(e) if x]
        if len(support) == 1:
            seen.add(support[0])
        elif not support:
            return True
    return len(seen) == gb.n
