import random
from fractions import Fraction

import pytest

from carnot.catalog import DEFAULT_INSTANCES, build_from_spec, engel, heisenberg
from carnot.derivations import MatrixSubspace, h_zero
from carnot.groebner import only_origin
from carnot.linalg import ExactMatrix, rank
from carnot.poly import MultiPoly
from carnot.rigidity import (
    CharacteristicInput,
    ad_rank_complex,
    characteristic_certificate,
    in_complex_span,
    is_characteristic,
    minor_ideal_adX,
    minor_ideal_h0,
    rank_one_from_witness,
    rigidity_verdict,
    witness_from_rank_one,
    witness_search,
)
from carnot.scalars import I
from carnot.symmetric import classical_matrix_algebras


def test_engel_minor_ideal():
    gens = minor_ideal_adX(engel())
    a, b = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    assert {g.monic() for g in gens} == {(a * a).monic(), (a * b).monic()}
    assert not only_origin(gens)


def test_heisenberg_minor_ideal_empty():
    assert minor_ideal_adX(heisenberg(3)) == []


def test_free_two_step_minor_ideal_spans_all_quadrics():
    gens = minor_ideal_adX(build_from_spec("free_two_step:3"))
    support = {e for g in gens for e in g.terms}
    assert support == {e for e in support if sum(e) == 2}
    assert only_origin(gens)


@pytest.mark.parametrize("spec", DEFAULT_INSTANCES)
def test_minor_generators_homogeneous_quadrics(spec):
    a = build_from_spec(spec)
    _, space = h_zero(a)
    for g in minor_ideal_adX(a) + minor_ideal_h0(space):
        assert g.is_homogeneous() and g.total_degree == 2
        assert g.evaluate([0] * g.n) == 0


def test_h0_minor_ideal_examples():
    _, space = h_zero(heisenberg(3))
    gens = minor_ideal_h0(space)
    e12 = ExactMatrix([[0, 1], [0, 0]])
    z = space.coordinates(e12)
    assert all(g.evaluate(z) == 0 for g in gens)
    ident = MatrixSubspace(2, [ExactMatrix.identity(2)])
    (g,) = minor_ideal_h0(ident)
    assert g == MultiPoly.variable(1, 0) ** 2 and only_origin([g])
    assert minor_ideal_h0(MatrixSubspace(3, [])) == []


def test_certificates():
    p = characteristic_certificate(classical_matrix_algebras("o", 3), (1, 0, 0))
    assert p.is_homogeneous() and p.total_degree == 3 and p.evaluate((1, 0, 0)) == 1
    q = characteristic_certificate(classical_matrix_algebras("co", 3), (0, 1, 0))
    assert q.is_homogeneous() and q.total_degree == 3 and q.evaluate((0, 1, 0)) == 1
    # co(3) has no rank-one elements, even over the complex numbers
    assert not is_characteristic(classical_matrix_algebras("co", 3), (1, I, 0))
    with pytest.raises(CharacteristicInput):
        characteristic_certificate(classical_matrix_algebras("rank_one", 2, (1, 0), (1, 0)), (1, 0))


def test_certificate_vanishes_on_characteristics():
    g0 = classical_matrix_algebras("rank_one", 3, (1, 0, 0), (0, 1, 0))
    p = characteristic_certificate(g0, (1, 0, 0))
    assert p.evaluate((1, 0, 0)) == 1
    assert is_characteristic(g0, (0, 1, 0)) and p.evaluate((0, 1, 0)) == 0


def test_witnesses():
    a = engel()
    assert witness_search(a) == a.element(X2=1)
    h = heisenberg(3)
    assert witness_search(h) == h.element(X1=1)
    c = build_from_spec("complex_heisenberg_real")
    w = witness_search(c)
    assert w == c.element(X1=1, X2=I)
    assert ad_rank_complex(c, w) == 1
    assert witness_search(build_from_spec("free_two_step:3")) is None


def test_complex_heisenberg_has_no_real_basis_witness():
    c = build_from_spec("complex_heisenberg_real")
    rng = random.Random(11)
    for i in range(4):
        assert ad_rank_complex(c, c.basis_vector(i)) == 2
    for _ in range(20):
        v = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
        if any(v):
            assert ad_rank_complex(c, c.embed_stratum(1, v)) == 2
    assert rigidity_verdict(c).verdict == "NonrigidRankOne"


@pytest.mark.parametrize("spec", ["heisenberg:3", "engel", "complex_heisenberg_real", "heisenberg:5", "abelian:2"])
def test_constructions_round_trip(spec):
    a = build_from_spec(spec)
    w = witness_search(a)
    d = rank_one_from_witness(a, w)
    phi = d.first_block
    assert rank(phi) == 1
    _, space = h_zero(a)
    assert in_complex_span(space, phi)
    assert ad_rank_complex(a, witness_from_rank_one(a, phi)) <= 1


def test_verdict_paths():
    assert rigidity_verdict(heisenberg(3)).criterion == "dimension-bound"
    v = rigidity_verdict(build_from_spec("free_two_step:3"), cross_check=True)
    assert v.rigid and v.witness is None and v.cross_check["agree"]
    v = rigidity_verdict(build_from_spec("abelian:3"))
    assert v.verdict == "NonrigidDegenerate" and v.criterion == "degenerate"
