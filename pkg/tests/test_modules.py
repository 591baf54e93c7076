import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfsmash.actions import HAction, action_from_grading, trivial_action
from hopfsmash.fdalgebra import truncated_algebra
from hopfsmash.groups import cyclic
from hopfsmash.hopf import ground_field, group_algebra
from hopfsmash.linalg import Q, identity, matmul, qmatrix, zeros
from hopfsmash.modules import (ModuleRep, ModuleRepError, adjoint_phi, grading_action_on_hom,
                               hom_action, hom_space, module_tensor, module_tensor_H,
                               regular_module, resolution_piece, theta, trivial_module_rep)
from hopfsmash.quiver import commutative_polynomial, one_vertex_presentation
from hopfsmash.resolution import minimal_resolution

R3 = commutative_polynomial(3, cyclic(3), ["g", "g", "g"])
ACT3 = action_from_grading(R3)
H3 = ACT3.hopf
A3 = truncated_algebra(R3, 2)
TACT3 = ACT3.truncate(A3)


def test_regular_and_trivial_modules():
    A = regular_module(A3, H3, TACT3)
    assert A.dim == 10 and A.verify()
    R0 = trivial_module_rep(A3, H3, TACT3)
    assert R0.dim == 1 and R0.verify()
    T = module_tensor_H(R0)
    assert T.dim == 3 and T.verify()


def test_tensor_with_ground_field_is_identity():
    P = commutative_polynomial(2)
    k = ground_field()
    A = truncated_algebra(P, 2)
    M = regular_module(A, k, trivial_action(k, P).truncate(A))
    T = module_tensor_H(M)
    assert T.dim == M.dim
    assert all(np.array_equal(a, b) for a, b in zip(T.amats, M.amats))


def test_module_tensor_rejects_non_module():
    R0 = trivial_module_rep(A3, H3, TACT3)
    with pytest.raises(ModuleRepError):
        module_tensor(R0, [identity(1)] * 3)


def test_hom_action_matches_invariants():
    A = regular_module(A3, H3, TACT3)
    rep = hom_action(A, A).verify()
    assert rep and rep.details["dim_hom"] == 10 and rep.details["dim_invariants"] == 1


def test_hom_action_on_resolution_piece():
    res = minimal_resolution(R3, N=4, D=6, equivariant=(H3, ACT3))
    P1 = resolution_piece(res, 1, A3, 2)
    assert P1.verify()
    rep = hom_action(P1, P1).verify()
    assert rep and rep.details["dim_hom"] == 36 and rep.details["dim_invariants"] == 9


def test_hom_unit_acts_as_identity():
    A = regular_module(A3, H3, TACT3)
    ha = hom_action(A, A)
    for f in ha.space.basis:
        assert np.array_equal(ha.apply_map(list(H3.unit), f), f)


def test_group_algebra_hom_action_is_conjugation():
    # kZ/2 swapping x and y on k[x,y]: (g -> f) = g f g^{-1}
    P = commutative_polynomial(2)
    H = group_algebra(cyclic(2))
    act = HAction(H, P, [identity(1), identity(1)], [identity(2), qmatrix([[0, 1], [1, 0]])])
    A = truncated_algebra(P, 2)
    M = regular_module(A, H, act.truncate(A))
    assert M.verify()
    ha = hom_action(M, M)
    g = H.index("g")
    ginv = M.hmats[g]  # g has order 2
    for f in ha.space.basis:
        assert np.array_equal(ha.apply_map(g, f), matmul(matmul(M.hmats[g], f), ginv))


def test_adjoint_with_trivial_and_regular_W():
    R0 = trivial_module_rep(A3, H3, TACT3)
    triv = [H3.counit[h] * identity(1) for h in range(H3.dim)]
    adj = adjoint_phi(triv, R0, R0)
    assert adj.report and adj.report.details["dim_source"] == 1
    adj = adjoint_phi(H3.left_regular, R0, R0)
    assert adj.report and adj.report.details["dim_source"] == adj.report.details["dim_target"] == 3


def test_theta_values():
    A = regular_module(A3, H3, TACT3)
    th = theta(A, random_pairs=20)
    assert th.report
    assert th.report.details["dim_source"] == th.report.details["dim_target"] == 30


def test_theta_over_ground_field():
    P = commutative_polynomial(2)
    k = ground_field()
    A = truncated_algebra(P, 2)
    M = regular_module(A, k, trivial_action(k, P).truncate(A))
    th = theta(M, random_pairs=10)
    assert th.report and th.report.details["rank"] == hom_space(M, M).dim
    # with H = k the map is f # 1 -> f
    for k0, f in enumerate(th.hom.space.basis):
        assert np.array_equal(th.dense_image({k0: Q(1)}), f)


# random N x G-graded modules over k[x]/(x^{T+1}) with a G-graded x

def _graded_module(A, H, act, G, a, pieces):
    """Sum of cyclic pieces k[x]/(x^len) with internal shift s and G-shift u."""
    basis = [(s + j, G.mul(u, G.power(a, j)), i, j) for i, (s, u, ln) in enumerate(pieces)
             for j in range(ln)]
    pos = {(i, j): r for r, (_, _, i, j) in enumerate(basis)}
    n = len(basis)
    amats = []
    for d in range(A.dim):
        m = zeros(n, n)
        for r, (_, _, i, j) in enumerate(basis):
            if (i, j + d) in pos:
                m[pos[(i, j + d)], r] = 1
        amats.append(m)
    hmats = []
    for h in range(H.dim):
        m = zeros(n, n)
        for r, (_, g, _, _) in enumerate(basis):
            if g == h:
                m[r, r] = 1
        hmats.append(m)
    return ModuleRep(A, H, act, amats, hmats, (0,) * n, tuple(b[0] for b in basis))


@st.composite
def graded_pairs(draw):
    n = draw(st.integers(1, 3))
    G = cyclic(n)
    a = draw(st.integers(0, n - 1))
    T = draw(st.integers(1, 3))
    P = one_vertex_presentation(["x"], [], G, [G.labels[a]])
    act = action_from_grading(P)
    A = truncated_algebra(P, T)
    tact = act.truncate(A)
    piece = st.tuples(st.integers(0, 2), st.integers(0, n - 1), st.integers(1, T + 1))
    M = _graded_module(A, act.hopf, tact, G, a, draw(st.lists(piece, min_size=1, max_size=3)))
    N = _graded_module(A, act.hopf, tact, G, a, draw(st.lists(piece, min_size=1, max_size=3)))
    return G, M, N


@given(graded_pairs())
def test_grading_action_agrees_with_hom_action(data):
    G, M, N = data
    assert M.verify() and N.verify()
    ha = hom_action(M, N)
    # the labels of kG* are the p_g in group order
    assert list(ha.hopf.labels) == [f"p_{g}" for g in G.labels]
    grad = grading_action_on_hom(ha.space, G)
    assert all(np.array_equal(x, y) for x, y in zip(grad, ha.mats))
    assert ha.verify()
