import pytest

from hopfsmash.actions import (ActionError, HAction, action_from_grading, covering_presentation,
                               grading_action_by_recursion, smash_fd, smash_product,
                               trivial_action, verify_covering_iso, verify_module_algebra)
from hopfsmash.fdalgebra import truncated_algebra
from hopfsmash.groups import cyclic
from hopfsmash.hopf import dual_group_algebra, ground_field, group_algebra
from hopfsmash.linalg import identity, qmatrix
from hopfsmash.quiver import commutative_polynomial, hilbert_function, one_vertex_presentation

R = commutative_polynomial(3)
R3 = commutative_polynomial(3, cyclic(3), ["g", "g", "g"])
R2 = commutative_polynomial(3, cyclic(2), ["g", "g", "g"])
ACT3 = action_from_grading(R3)
H3 = ACT3.hopf


def test_grading_action_matrices():
    g, e = H3.index("p_g"), H3.index("p_e")
    assert (ACT3.dense(g, 1) == identity(3)).all()
    assert not ACT3.dense(e, 1).any()
    assert (ACT3.dense(e, 0) == identity(1)).all()
    assert not ACT3.dense(g, 0).any()


def test_module_algebra_checks():
    assert verify_module_algebra(R, group_algebra(cyclic(2)),
                                 trivial_action(group_algebra(cyclic(2)), R), 3)
    assert verify_module_algebra(R3, H3, ACT3, 5)


def test_grading_action_agrees_with_coproduct_recursion():
    rec = grading_action_by_recursion(ACT3)
    for h in range(H3.dim):
        for d in range(5):
            assert (rec.dense(h, d) == ACT3.dense(h, d)).all()


def test_unstable_action_is_reported():
    P = one_vertex_presentation(["x", "y"], [[(1, "xy")]])
    H = group_algebra(cyclic(2))
    swap = qmatrix([[0, 1], [1, 0]])
    act = HAction(H, P, [identity(1), identity(1)], [identity(2), swap])
    rep = verify_module_algebra(P, H, act, 3)
    assert not rep and rep.first_failure.startswith("relations are H-stable")
    with pytest.raises(ActionError):
        smash_product(P, H, act, 3)


def test_smash_dims_and_associativity():
    B = smash_product(R3, H3, ACT3, 5)
    assert B.dims == [3, 9, 18, 30, 45, 63]
    assert B.associativity_check(trials=30)
    S, _ = covering_presentation(R3)
    assert hilbert_function(S, 5) == B.dims


def test_smash_with_ground_field_is_the_algebra():
    A = truncated_algebra(R, 2)
    k = ground_field()
    B = smash_fd(A, k, trivial_action(k, A))
    assert B.dim == A.dim
    assert all(B.mul_basis(i, j) == A.mul_basis(i, j) for i in range(A.dim) for j in range(A.dim))


def test_coverings():
    S, cov = covering_presentation(R3)
    assert (len(S.quiver.vertices), len(S.quiver.arrows), len(S.relations)) == (3, 9, 9)
    assert "x_2*y_1 + -1*y_2*x_1" in [str(r) for r in S.relations]
    x1 = S.quiver.arrows[S.quiver.arrow_index("x_1")]
    assert (S.quiver.vertices[x1.source], S.quiver.vertices[x1.target]) == ("g", "g^2")
    S2, _ = covering_presentation(R2)
    assert (len(S2.quiver.vertices), len(S2.quiver.arrows), len(S2.relations)) == (2, 6, 6)
    assert hilbert_function(S2, 4) == [2, 6, 12, 20, 30]
    R1 = commutative_polynomial(3, cyclic(1), ["e", "e", "e"])
    S1, _ = covering_presentation(R1)
    assert hilbert_function(S1, 4) == hilbert_function(R, 4)


@pytest.mark.parametrize("P", [R3, R2, commutative_polynomial(3, cyclic(1), ["e", "e", "e"])])
def test_covering_iso(P):
    assert verify_covering_iso(P, D=4)


def test_trivial_action_on_dual_is_module_algebra():
    H = dual_group_algebra(cyclic(2))
    assert verify_module_algebra(R, H, trivial_action(H, R), 3)
