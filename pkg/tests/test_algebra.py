from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carnot.algebra import (
    AlgebraParseError,
    AlgebraValidationError,
    degenerate_subspace,
    grading_derivation,
    leibniz_defects,
    parse_algebra,
    serialize_algebra,
    validate_structure,
)
from carnot.catalog import DEFAULT_INSTANCES, build_from_spec, catalog_build, engel, file_stem, heisenberg

HEIS = """
name heis
stratum 1: X1 X2
stratum 2: Y   # centre
bracket [X1,X2] = Y
"""


def test_parse_heisenberg():
    a = parse_algebra(HEIS)
    assert a.dims == (2, 1) and a.dim == 3
    assert a.bracket(a.element(X2=1), a.element(X1=1)) == a.element(Y=-1)


def test_rational_coefficient_parsed_exactly():
    text = """
    name e
    stratum 1: X1 X2
    stratum 2: X3
    stratum 3: X4
    bracket [X1,X2] = X3
    bracket [X1,X3] = -3/2 X4
    """
    a = parse_algebra(text)
    assert a.bracket_names()[("X1", "X3")] == {"X4": Fraction(-3, 2)}


def test_grading_violation_reported():
    text = "name bad\nstratum 1: X1 X2\nstratum 2: Y\nbracket [X1,X2] = X1\n"
    with pytest.raises(AlgebraValidationError) as info:
        parse_algebra(text)
    assert any(i.kind == "GradingFailure" for i in info.value.issues)


@pytest.mark.parametrize(
    "text",
    [
        "name a\nstratum 1: X X\n",
        "name a\nstratum 1: X\nbracket [X,Z] = X\n",
        "name a\nstratum 2: X\n",
        "name a\nstratum 1: X Y\nstratum 2: Z\nbracket [X,Y] = Z\nbracket [X,Y] = Z\n",
        "name a\nstratum 1: X Y\nstratum 2: Z\nbracket [X,Y] = 0.5 Z\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises((AlgebraParseError, AlgebraValidationError)):
        parse_algebra(text)


def test_jacobi_failure_detected():
    text = """
    name nj
    stratum 1: A B C
    stratum 2: D E
    stratum 3: F
    bracket [A,B] = D
    bracket [B,C] = E
    bracket [A,E] = F
    """
    kinds = {i.kind for i in validate_structure(parse_algebra(text, validate=False))}
    assert "JacobiFailure" in kinds


def test_bracket_generation_failure_detected():
    text = "name g\nstratum 1: X1 X2\nstratum 2: Y Z\nbracket [X1,X2] = Y\n"
    kinds = {i.kind for i in validate_structure(parse_algebra(text, validate=False))}
    assert "BracketGenerationFailure" in kinds


@pytest.mark.parametrize("spec", DEFAULT_INSTANCES)
def test_catalog_round_trip(spec):
    a = build_from_spec(spec)
    assert not validate_structure(a)
    assert parse_algebra(serialize_algebra(a)) == a


def test_catalog_names():
    assert catalog_build("heisenberg", 5).dims == (4, 1)
    assert file_stem("product_with_abelian:heisenberg:3:1") == "product_with_abelian_heisenberg_3_1"
    with pytest.raises(ValueError):
        catalog_build("nonsense")
    with pytest.raises(ValueError):
        catalog_build("heisenberg", 4)


def test_degenerate_subspace():
    assert degenerate_subspace(heisenberg(3)) == []
    assert len(degenerate_subspace(build_from_spec("abelian:3"))) == 3
    (z,) = degenerate_subspace(build_from_spec("product_with_abelian:heisenberg:3:1"))
    assert z == (0, 0, 1, 0)


@pytest.mark.parametrize("spec", DEFAULT_INSTANCES)
def test_grading_derivation_is_derivation(spec):
    a = build_from_spec(spec)
    assert leibniz_defects(a, grading_derivation(a).full_matrix()) == []


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(-3, 3, max_denominator=3), min_size=4, max_size=4), st.lists(st.fractions(-3, 3, max_denominator=3), min_size=4, max_size=4))
def test_bracket_antisymmetric(u, v):
    a = engel()
    assert a.bracket(u, v) == tuple(-x for x in a.bracket(v, u))
