from fractions import Fraction

import pytest

from carnot.catalog import build_from_spec, engel, free_two_step, heisenberg
from carnot.derivations import MatrixSubspace
from carnot.linalg import ExactMatrix
from carnot.tanaka import (
    LevelNotComputed,
    TowerNotTerminated,
    bracket_in_tower,
    export_graded_algebra,
    h_spaces,
    prolong_tower,
    rank_one_tower_element,
    su12_elements,
)


def weighted_monomials(k):
    """Count of x1^a x2^b y^c with a + b + 2c = k + 2 (contact generating functions)."""
    d = k + 2
    return sum(d - 2 * c + 1 for c in range(d // 2 + 1))


def test_full_heisenberg_tower_matches_contact_count():
    t = prolong_tower(heisenberg(3), "full", max_level=4)
    assert [len(lv) for lv in t.levels] == [weighted_monomials(k) for k in range(5)] == [4, 6, 9, 12, 16]
    assert str(t.status) == "CapReached(4)"


def test_free_two_step_3_is_so34():
    t = prolong_tower(free_two_step(3), "full")
    assert t.dims == [9, 3, 3]
    assert str(t.status) == "TerminatedAt(3)"
    lt = export_graded_algebra(t)
    assert lt.dim == 21 and not lt.jacobi_failures
    assert t.probe_level(4) == 0


def test_conformal_heisenberg5():
    t = prolong_tower(heisenberg(5), "conformal")
    assert t.dims == [5, 4, 1] and t.status.terminated
    assert not export_graded_algebra(t).jacobi_failures


def test_conformal_engel_and_h0_mode():
    assert prolong_tower(engel(), "conformal").dims == [1]
    t = prolong_tower(heisenberg(3), "h0", max_level=3)
    assert [len(lv) for lv in t.levels] == [3, 4, 5, 6]


def test_custom_matrix_subspace_selection():
    # the rotation block of gl(2) gives the restricted tower of its derivations
    rot = MatrixSubspace(2, [ExactMatrix([[0, 1], [-1, 0]]), ExactMatrix([[1, 0], [0, 1]])])
    t = prolong_tower(heisenberg(3), rot)
    assert t.dims == [2, 2, 1]


def test_mode_flag_combinations_rejected():
    with pytest.raises(ValueError):
        prolong_tower(heisenberg(3), "full", restricted=True)
    with pytest.raises(ValueError):
        prolong_tower(heisenberg(3), "conformal", restricted=False)
    with pytest.raises(ValueError):
        prolong_tower(heisenberg(3), "sideways")


def test_every_element_satisfies_leibniz_and_jacobi():
    for t in (prolong_tower(heisenberg(3), "full", max_level=3), prolong_tower(engel(), "full", max_level=3)):
        for lv in t.levels:
            for e in lv:
                assert t.leibniz_defects(e) == []
        assert t.jacobi_failures() == []
        t.check_closure()


def test_restricted_closure():
    t = prolong_tower(heisenberg(5), "conformal")
    t.check_closure()


def test_monotone_termination():
    for spec in ("heisenberg:3", "engel", "free_two_step:3"):
        t = prolong_tower(build_from_spec(spec), "conformal")
        assert t.status.terminated
        assert t.probe_level(t.status.level + 1) == 0


def test_h_spaces_of_abelian_are_everything():
    t = prolong_tower(build_from_spec("abelian:2"), "full", max_level=2)
    assert [len(h) for h in h_spaces(t)] == [len(lv) for lv in t.levels]


def test_rank_one_persists():
    t = prolong_tower(engel(), "full", max_level=3)
    # X1 -> X2 is the rank-one element of h0 for the Engel algebra
    for k in range(4):
        e = rank_one_tower_element(t, k, (0, 1), (1, 0))
        assert not e.is_zero() and t.coordinates(e) is not None


def test_su12_elements_and_brackets():
    t = prolong_tower(heisenberg(3), "conformal")
    els = su12_elements(t)
    assert set(els) == {"A1", "A2", "B1", "B2", "C2"}
    c = {k: t.coordinates(v) for k, v in els.items()}
    # [Xb1, Xb2] = -2 Yb with Xb = 2B and Yb = -4 C2 gives [B1, B2] = 2 C2
    b1b2 = bracket_in_tower(t, (1, c["B1"]), (1, c["B2"]))
    assert b1b2 == tuple(2 * x for x in c["C2"])
    # A1 acts on level 1 by the scalar 1/2
    assert bracket_in_tower(t, (0, c["A1"]), (1, c["B1"])) == tuple(Fraction(-1, 2) * x for x in c["B1"])


def test_uncomputed_levels():
    t = prolong_tower(heisenberg(3), "full", max_level=1)
    with pytest.raises(LevelNotComputed):
        t.dim_at(2)
    with pytest.raises(LevelNotComputed):
        t.basis_bracket(1, 0, 1, 0)
    with pytest.raises(TowerNotTerminated):
        export_graded_algebra(t)
