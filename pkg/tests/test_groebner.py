import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carnot.groebner import (
    NonHomogeneousInput,
    PartialComputation,
    _spoly,
    groebner_basis,
    normal_form,
    only_origin,
)
from carnot.poly import MultiPoly, divides, grevlex_key

x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)


def names(gb):
    return [g.format(["x", "y"]) for g in gb]


def test_examples():
    assert names(groebner_basis([x + y, x - y])) == ["x", "y"]
    assert names(groebner_basis([x * x, x * y])) == ["x^2", "x*y"]
    assert names(groebner_basis([x * y - 1, x * x])) == ["1"]


def test_normal_form_examples():
    assert normal_form(x * x, groebner_basis([x])).is_zero()
    assert normal_form(x * x * y + y, groebner_basis([x * x])) == y


def test_grevlex_order():
    # x*y^2 > x^2 in grevlex? both degree 3 vs 2: degree first
    assert grevlex_key((1, 2)) > grevlex_key((2, 0))
    # same degree: x^2 > x*y > y^2, and x*z < y^2 in three variables
    assert grevlex_key((2, 0)) > grevlex_key((1, 1)) > grevlex_key((0, 2))
    assert grevlex_key((0, 2, 0)) > grevlex_key((1, 0, 1))


def random_system(rng, nv, count, degree=2):
    from itertools import product

    monos = [e for e in product(range(degree + 1), repeat=nv) if sum(e) == degree]
    return [
        MultiPoly(nv, {e: Fraction(rng.randint(-3, 3)) for e in rng.sample(monos, min(3, len(monos)))})
        for _ in range(count)
    ]


@pytest.mark.parametrize("seed", range(12))
def test_reduced_basis_properties(seed):
    rng = random.Random(seed)
    nv = rng.randint(2, 4)
    gens = random_system(rng, nv, rng.randint(2, 4))
    gb = groebner_basis(gens, n=nv)
    for g in gens:
        assert normal_form(g, gb).is_zero()
    leads = gb.leading_monomials()
    for i, g in enumerate(gb):
        assert g.leading("grevlex")[1] == 1
        for e in g.terms:
            for j, le in enumerate(leads):
                if j != i:
                    assert not divides(le, e)
    # Buchberger criterion: all S-polynomials reduce to zero
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            assert normal_form(_spoly(gb.generators[i], gb.generators[j], "grevlex"), gb).is_zero()
    shuffled = list(gens)
    rng.shuffle(shuffled)
    assert groebner_basis(shuffled, n=nv).generators == gb.generators


def test_lex_order_elimination():
    a, b, c = (MultiPoly.variable(3, i) for i in range(3))
    gb = groebner_basis([a + b + c, a * b + b * c + c * a, a * b * c - 1], "lex")
    assert [g.format(list("abc"), "lex") for g in gb] == ["a + b + c", "b^2 + b*c + c^2", "c^3 - 1"]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_normal_form_idempotent(seed):
    rng = random.Random(seed)
    gb = groebner_basis(random_system(rng, 3, 3), n=3)
    p = random_system(rng, 3, 1, degree=3)[0]
    nf = normal_form(p, gb)
    assert normal_form(nf, gb) == nf
    assert gb.contains(p - nf)


def test_only_origin():
    assert only_origin([x * x, x * y, y * y])
    assert not only_origin([x * x, x * y])
    assert not only_origin([], n=2)
    assert only_origin([], n=0)
    with pytest.raises(NonHomogeneousInput):
        only_origin([x * x + y])


def test_step_budget():
    rng = random.Random(5)
    gens = random_system(rng, 4, 4)
    with pytest.raises(PartialComputation):
        groebner_basis(gens + [g * MultiPoly.variable(4, 0) for g in gens], n=4, max_steps=0)


def test_poly_arithmetic():
    p = (x + y) ** 3
    assert p.terms[(2, 1)] == 3
    assert p.evaluate((1, 2)) == 27
    assert (p - p).is_zero()
    assert (x * 2).format(["x", "y"]) == "2*x"
