import pytest

from carnot.algebra import leibniz_defects
from carnot.catalog import DEFAULT_INSTANCES, build_from_spec
from carnot.derivations import MatrixSubspace, conformal_subalgebra, h_zero, strata_derivations
from carnot.linalg import ExactMatrix

# (dim g0, dim h0, dim conformal); g0 cross-checked with an independent
# full-matrix solve, the rest by hand.
EXPECTED = {
    "abelian:2": (4, 4, 2),
    "abelian:3": (9, 9, 4),
    "heisenberg:3": (4, 3, 2),
    "heisenberg:5": (11, 10, 5),
    "free_two_step:3": (9, 0, 4),
    "free_two_step:4": (16, 0, 7),
    "engel": (3, 1, 1),
    "complex_heisenberg_real": (8, 6, 5),
    "product_with_abelian:heisenberg:3:1": (7, 6, 2),
}


@pytest.mark.parametrize("spec", DEFAULT_INSTANCES)
def test_dimensions(spec):
    a = build_from_spec(spec)
    g0 = strata_derivations(a)
    h0, space = h_zero(a)
    co = conformal_subalgebra(a)
    assert (len(g0), len(h0), len(co)) == EXPECTED[spec]
    assert space.dim == len(h0)
    for d in g0 + h0 + co:
        assert leibniz_defects(a, d.full_matrix()) == []


def test_h0_heisenberg_is_sl2():
    _, space = h_zero(build_from_spec("heisenberg:3"))
    for m in space.basis:
        assert m.trace() == 0
    assert space.is_subalgebra()


def test_conformal_condition():
    a = build_from_spec("heisenberg:5")
    for d in conformal_subalgebra(a):
        s = d.first_block + d.first_block.T
        lam = s[0, 0]
        assert s == ExactMatrix.diagonal([lam] * 4)


def test_matrix_subspace_membership_and_annihilator():
    e11 = ExactMatrix([[1, 0], [0, 0]])
    space = MatrixSubspace(2, [e11])
    assert e11.scale(3) in space
    assert ExactMatrix([[0, 1], [0, 0]]) not in space
    ann = space.annihilator()
    assert len(ann) == 3
    with pytest.raises(ValueError):
        MatrixSubspace(2, [e11, e11.scale(2)])
