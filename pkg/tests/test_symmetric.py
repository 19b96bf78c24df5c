import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carnot.derivations import h_zero
from carnot.catalog import DEFAULT_INSTANCES, build_from_spec
from carnot.linalg import ExactMatrix, determinant
from carnot.poly import MultiPoly
from carnot.symmetric import (
    FiniteType,
    MatrixFormatError,
    SymTensor,
    UndeterminedUpTo,
    builtin_subspace,
    classical_matrix_algebras,
    finite_type_scan,
    pairing,
    pairing_gram,
    parse_matrix_subspace,
    polarize,
    serialize_matrix_subspace,
    slice_defects,
    ss_prolongation_level,
    sym_product,
    symmetrize,
)
from carnot.tanaka import h_spaces, prolong_tower

half = Fraction(1, 2)


def test_symmetrize_examples():
    assert symmetrize(2, {(0, 1): 1}).as_dict() == {(0, 1): half}
    t = symmetrize(2, {(0, 0, 1): 1})
    assert t.full_components() == {(0, 0, 1): Fraction(1, 3), (0, 1, 0): Fraction(1, 3), (1, 0, 0): Fraction(1, 3)}
    assert symmetrize(2, t.full_components()) == t


def test_pairing_examples():
    e1, e2 = (1, 0), (0, 1)
    assert pairing(sym_product(2, [e1, e2]), sym_product(2, [e1, e2])) == half
    assert pairing(sym_product(2, [e1, e1]), sym_product(2, [e1, e2])) == 0
    v, eta = (2, -1), (Fraction(1, 3), 5)
    assert pairing(sym_product(2, [v, v]), sym_product(2, [eta, eta])) == (Fraction(2, 3) - 5) ** 2
    with pytest.raises(ValueError):
        pairing(sym_product(2, [e1]), sym_product(2, [e1, e1]))


@pytest.mark.parametrize("n,k", [(n, k) for n in (1, 2, 3) for k in (1, 2, 3)])
def test_pairing_nondegenerate(n, k):
    assert determinant(pairing_gram(n, k)) != 0


def test_polarize_examples():
    x = MultiPoly.variable(1, 0)
    assert polarize(x * x).evaluate([(3,), (5,)]) == 15
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    t = polarize(x * y)
    assert t.evaluate([(1, 2), (3, 4)]) == Fraction(1 * 4 + 2 * 3, 2)
    with pytest.raises(ValueError):
        polarize(x * y + x)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=10, max_size=10), st.lists(st.fractions(-2, 2, max_denominator=3), min_size=3, max_size=3))
def test_polarize_diagonal_round_trip(coeffs, point):
    monos = [(a, b, 3 - a - b) for a in range(4) for b in range(4 - a)]
    p = MultiPoly(3, dict(zip(monos, coeffs)))
    t = polarize(p)
    if p.is_zero():
        return
    assert t.diagonal() == p
    assert t.evaluate([point] * 3) == p.evaluate(point)


@pytest.mark.parametrize("n,k", [(n, k) for n in (1, 2, 3) for k in (0, 1, 2, 3)])
def test_gl_count(n, k):
    assert len(ss_prolongation_level(classical_matrix_algebras("gl", n), k)) == n * comb(n + k, k + 1)


def test_classical_dims():
    assert classical_matrix_algebras("co", 3).dim == 4
    assert classical_matrix_algebras("o", 4).dim == 6
    assert classical_matrix_algebras("sl", 3).dim == 8
    r = classical_matrix_algebras("rank_one", 2, (1, 0), (0, 1))
    assert r.basis == (ExactMatrix([[0, 1], [0, 0]]),)
    with pytest.raises(ValueError):
        classical_matrix_algebras("sp", 2)


def test_scan_results():
    assert finite_type_scan(classical_matrix_algebras("o", 3), 4) == FiniteType(1, (3, 0))
    assert finite_type_scan(classical_matrix_algebras("co", 4), 4) == FiniteType(2, (7, 4, 0))
    assert finite_type_scan(classical_matrix_algebras("co", 2), 4) == UndeterminedUpTo(4, (2, 2, 2, 2, 2))


def test_slices_lie_in_g0_after_contraction():
    g0 = classical_matrix_algebras("co", 3)
    rng = random.Random(1)
    for t in ss_prolongation_level(g0, 1):
        assert slice_defects(g0, t) == []
        v = [Fraction(rng.randint(-3, 3)) for _ in range(3)]
        assert t.contract([v]) in g0


def test_rank_one_keeps_levels_nonzero():
    g0 = classical_matrix_algebras("rank_one", 3, (1, 2, 0), (0, 1, 1))
    assert all(len(ss_prolongation_level(g0, k)) >= 1 for k in range(4))


@pytest.mark.parametrize("spec", DEFAULT_INSTANCES)
def test_tanaka_correspondence(spec):
    a = build_from_spec(spec)
    t = prolong_tower(a, "full", max_level=3)
    tanaka = [len(h) for h in h_spaces(t, upto=min(3, t.top_level))]
    _, h0 = h_zero(a)
    ss = [len(ss_prolongation_level(h0, k)) for k in range(len(tanaka))]
    assert tanaka == ss


def test_matrix_file_round_trip():
    space = builtin_subspace("co:3")
    again = parse_matrix_subspace(serialize_matrix_subspace(space))
    assert again.basis == space.basis
    with pytest.raises(MatrixFormatError):
        parse_matrix_subspace("1 0\n0 1\n\n1 0 0\n")
    with pytest.raises(MatrixFormatError):
        parse_matrix_subspace("1 0\n0 0.5\n")
    with pytest.raises(ValueError):
        builtin_subspace("co3")


def test_symtensor_validation():
    with pytest.raises(ValueError):
        SymTensor.from_dict(2, 2, {(0, 2): 1})
