from fractions import Fraction as F

from hypothesis import given, strategies as st

from hopfsmash.actions import action_from_grading, trivial_action
from hopfsmash.ext import (associativity_check, generation_check, h_action_on_ext,
                           product_rank_profile, second_lift_check, verify_cor_ext,
                           verify_thm_koszul_transfer, yoneda_ext_algebra)
from hopfsmash.groups import cyclic
from hopfsmash.hopf import ground_field
from hopfsmash.io import load_bundle
from hopfsmash.quiver import commutative_polynomial, one_vertex_presentation
from hopfsmash.actions import covering_presentation
from hopfsmash.resolution import minimal_resolution

R = commutative_polynomial(3)
R3 = commutative_polynomial(3, cyclic(3), ["g", "g", "g"])
R2 = commutative_polynomial(3, cyclic(2), ["g", "g", "g"])
CUBIC = load_bundle("dcubic")
E_R = yoneda_ext_algebra(minimal_resolution(R, N=4, D=6), 3)


def _equivariant_ext(P):
    act = action_from_grading(P)
    res = minimal_resolution(P, N=4, D=6, equivariant=(act.hopf, act))
    E = yoneda_ext_algebra(res, 3)
    return E, h_action_on_ext(res, act.hopf, E)


def test_exterior_algebra():
    E = E_R
    assert E.dims == [1, 3, 3, 1]
    assert E.bigraded_dims == {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}
    e1 = E.in_degree(1)
    for a in e1:
        assert E.mul({a: F(1)}, {a: F(1)}) == {}
        for b in e1:
            ab, ba = E.mul({a: F(1)}, {b: F(1)}), E.mul({b: F(1)}, {a: F(1)})
            assert ab == {k: -v for k, v in ba.items()}
    x, y, z = ({a: F(1)} for a in e1)
    assert E.mul(E.mul(x, y), z) != {}
    assert product_rank_profile(E)[(1, 1)] == 3
    assert generation_check(E, 1)


def test_unit_law():
    for i in range(E_R.dim):
        assert E_R.mul(E_R.unit(), {i: F(1)}) == {i: F(1)} == E_R.mul({i: F(1)}, E_R.unit())


def test_product_is_independent_of_the_lift():
    assert second_lift_check(E_R)
    assert associativity_check(E_R)


def test_cubic_ext_needs_degree_two_generators():
    res = minimal_resolution(CUBIC.presentation, N=4, D=8)
    E = yoneda_ext_algebra(res, 3)
    assert E.dims == [1, 2, 2, 1]
    assert not generation_check(E, 1)
    assert generation_check(E, 2)


def test_invariants_on_ext():
    assert _equivariant_ext(R3)[1].invariant_dims == [1, 0, 0, 1]
    # Ext^2 has G-degree g^2 = e for Z/2, so three classes survive there
    assert _equivariant_ext(R2)[1].invariant_dims == [1, 0, 3, 0]


def test_invariants_for_trivial_hopf():
    H = ground_field()
    act = trivial_action(H, R)
    res = minimal_resolution(R, N=4, D=6, equivariant=(H, act))
    E = yoneda_ext_algebra(res, 3)
    assert h_action_on_ext(res, H, E).invariant_dims == E.dims


def test_cor_ext():
    act = action_from_grading(R3)
    rep = verify_cor_ext(R3, act.hopf, act)
    assert rep
    assert rep.details["(i) dim Ext_{R#H}(R0,R0)"] == [1, 0, 0, 1]
    assert rep.details["(i) dim Ext_R(R0,R0)^H"] == [1, 0, 0, 1]
    assert rep.details["(iii) dims E(R#H)"] == [3, 9, 9, 3]
    H = ground_field()
    assert verify_cor_ext(R, H, trivial_action(H, R))


def test_koszul_transfer():
    act = action_from_grading(R3)
    rep = verify_thm_koszul_transfer(R3, act.hopf, act)
    assert rep and rep.details["R Koszul"] and rep.details["R#H Koszul"]
    assert rep.details["dims E(R#H)"] == rep.details["dims E(R)#H"] == [3, 9, 9, 3]
    rep = verify_thm_koszul_transfer(CUBIC.presentation, CUBIC.hopf, CUBIC.action, d=3, D=8)
    assert rep and rep.details["R Koszul"] is True and rep.details["R#H Koszul"] is True
    assert rep.details["dims E(R#H)"] == [2, 4, 4, 2]
    H = ground_field()
    assert verify_thm_koszul_transfer(R, H, trivial_action(H, R))


EXTS = [E_R,
        yoneda_ext_algebra(minimal_resolution(covering_presentation(R3)[0], N=4, D=6), 3),
        yoneda_ext_algebra(minimal_resolution(CUBIC.presentation, N=4, D=8), 3),
        yoneda_ext_algebra(minimal_resolution(
            one_vertex_presentation(["x", "y"], [[(1, "xy")], [(1, "xx"), (-1, "yy")]]),
            N=3, D=5), 3)]


def _vector(draw, E, n):
    basis = E.in_degree(n)
    if not basis:
        return {}
    coefs = draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
    return {b: F(c) for b, c in zip(basis, coefs) if c}


@given(st.data())
def test_yoneda_associativity_in_range(data):
    E = data.draw(st.sampled_from(EXTS))
    degs = data.draw(st.lists(st.integers(0, E.range), min_size=3, max_size=3)
                     .filter(lambda d: sum(d) <= E.range))
    x, y, z = (_vector(data.draw, E, n) for n in degs)
    assert E.mul(E.mul(x, y), z) == E.mul(x, E.mul(y, z))
