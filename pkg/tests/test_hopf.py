from fractions import Fraction as F

import numpy as np
import pytest

from hopfsmash.groups import GroupError, cyclic, direct_product, from_table
from hopfsmash.hopf import (HopfError, act_element, dual_group_algebra, from_structure_constants,
                           ground_field, group_algebra, invariants, left_integral,
                           verify_hopf_axioms)
from hopfsmash.linalg import identity, matmul, zeros


def klein():
    return from_table([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
                      ["e", "a", "b", "ab"])


def test_groups():
    G = cyclic(3)
    assert G.labels == ("e", "g", "g^2")
    assert G.mul(1, 2) == 0 and G.inv(1) == 2
    assert direct_product(cyclic(2), cyclic(2)).order == 4
    with pytest.raises(GroupError):
        from_table([[0, 1], [1, 1]])


@pytest.mark.parametrize("H", [group_algebra(cyclic(3)), dual_group_algebra(cyclic(3)),
                               group_algebra(klein()), ground_field()])
def test_axioms_pass(H):
    assert verify_hopf_axioms(H)


def test_group_algebra_formulas():
    H = group_algebra(cyclic(3))
    g = H.index("g")
    assert H.delta_terms[g] == [(1, g, g)]
    assert list(H.antipode[:, g]) == [0, 0, 1]
    assert group_algebra(cyclic(1)).dim == 1


def test_dual_comultiplication():
    H = dual_group_algebra(cyclic(3))
    pe = H.index("p_e")
    terms = {(H.labels[j], H.labels[k]) for c, j, k in H.delta_terms[pe] if c == 1}
    assert terms == {("p_e", "p_e"), ("p_g", "p_g^2"), ("p_g^2", "p_g")}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dual_is_transpose_of_group_algebra(n):
    G = cyclic(n)
    A, B = group_algebra(G), dual_group_algebra(G)
    # the product of the dual is the transpose of the coproduct and vice versa
    assert (B.mult == A.comult.transpose(1, 2, 0)).all()
    assert (B.comult == A.mult.transpose(2, 0, 1)).all()
    assert (B.antipode == A.antipode.T).all()


def test_broken_antipode_has_witness():
    H = group_algebra(cyclic(3))
    H.antipode = identity(3)
    rep = verify_hopf_axioms(H)
    assert not rep and "g" in rep.first_failure


def test_integrals():
    L = left_integral(group_algebra(cyclic(3)))
    assert list(L.element) == [F(1, 3)] * 3 and L.semisimple
    L = left_integral(dual_group_algebra(cyclic(3)))
    assert list(L.element) == [1, 0, 0] and L.semisimple
    assert list(left_integral(ground_field()).element) == [1]


def test_raw_structure_constants_round_trip():
    A = group_algebra(cyclic(2))
    B = from_structure_constants(2, A.mult.tolist(), A.comult.tolist(), A.counit.tolist(),
                                 A.antipode.tolist(), labels=["e", "g"])
    assert verify_hopf_axioms(B)
    assert list(B.unit) == [1, 0]
    with pytest.raises(HopfError):
        from_structure_constants(2, np.zeros((2, 2, 2), dtype=int).tolist(), A.comult.tolist(),
                                 A.counit.tolist(), A.antipode.tolist())


def test_invariants():
    H = group_algebra(cyclic(2))
    triv = [H.counit[h] * identity(2) for h in range(2)]
    assert invariants(H, triv).dim == 2
    inv = invariants(H, H.left_regular)
    assert inv.dim == 1 and inv.agrees
    assert inv.basis[0][0] == inv.basis[0][1]
    # k(Z/3)* on a Z/3-graded space of dims (2, 1, 1): invariants = e-component
    D = dual_group_algebra(cyclic(3))
    degs = [0, 0, 1, 2]
    mats = []
    for g in range(3):
        m = zeros(4, 4)
        for i, d in enumerate(degs):
            m[i, i] = F(int(d == g))
        mats.append(m)
    assert invariants(D, mats).dim == 2


def test_act_element_is_projector_for_integral():
    H = group_algebra(cyclic(3))
    L = left_integral(H).element
    P = act_element(H, H.left_regular, L)
    assert (matmul(P, P) == P).all()
