from math import comb

import pytest
from hypothesis import given, strategies as st

from hopfsmash.actions import ActionError, HAction, action_from_grading, trivial_action
from hopfsmash.groups import cyclic
from hopfsmash.hopf import group_algebra
from hopfsmash.io import load_bundle
from hopfsmash.linalg import identity, qmatrix
from hopfsmash.quiver import (Presentation, Quiver, commutative_polynomial, free_algebra,
                              one_vertex_presentation)
from hopfsmash.actions import covering_presentation
from hopfsmash.resolution import (_happly_target, d_koszul_check, gorenstein_check_bounded,
                                  koszul_degree, minimal_resolution)
from hopfsmash.fdalgebra import sadd

R = commutative_polynomial(3)
R3 = commutative_polynomial(3, cyclic(3), ["g", "g", "g"])
NONKOSZUL = one_vertex_presentation(["x", "y"], [[(1, "xy")], [(1, "xx"), (-1, "yy")]],
                                    homogeneity_degree=2)


def koszul_complex_betti(n):
    """Betti numbers of k over k[x_1..x_n]: C(n, i) in degree i."""
    return {(i, i): comb(n, i) for i in range(n + 1)}


def test_polynomial_ring():
    res = minimal_resolution(R, N=3, D=6)
    assert res.ranks() == [1, 3, 3, 1]
    assert [s for _, s in res.free[3].gens] == [3]
    assert res.certificate()
    res = minimal_resolution(R, N=4, D=6)
    assert res.betti_table() == koszul_complex_betti(3) == {(0, 0): 1, (1, 1): 3, (2, 2): 3,
                                                             (3, 3): 1}
    assert res.generators(4) == [] and res.length == 3


def test_free_algebra_is_hereditary():
    res = minimal_resolution(free_algebra("xyz"), N=4, D=5)
    assert res.ranks() == [1, 3, 0] and res.length == 1


def test_semisimple_algebra():
    P0 = Presentation(Quiver.build(["o"], []))
    assert minimal_resolution(P0, N=3, D=3).betti_table() == {(0, 0): 1}


def test_covering_resolution():
    S, _ = covering_presentation(R3)
    res = minimal_resolution(S, N=4, D=6)
    assert res.ranks() == [3, 9, 9, 3, 0]
    assert res.betti_table() == {(0, 0): 3, (1, 1): 9, (2, 2): 9, (3, 3): 3}


def test_koszul_degrees():
    assert [koszul_degree(n, 2) for n in range(5)] == [0, 1, 2, 3, 4]
    assert [koszul_degree(n, 3) for n in range(6)] == [0, 1, 3, 4, 6, 7]


def test_d_koszul_verdicts():
    assert d_koszul_check(minimal_resolution(R, N=4, D=6), 2)
    mono = one_vertex_presentation(["x", "y"], [[(1, "xy")]], homogeneity_degree=2)
    res = minimal_resolution(mono, N=4, D=6)
    assert d_koszul_check(res, 2) and res.betti_table() == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    rep = d_koszul_check(minimal_resolution(NONKOSZUL, N=4, D=6), 2)
    assert not rep
    assert rep.details["first_off_diagonal"] == {"n": 3, "degree": 4}


def test_cubic_algebra_is_3_koszul():
    P = load_bundle("dcubic").presentation
    res = minimal_resolution(P, N=4, D=8)
    assert res.betti_table() == {(0, 0): 1, (1, 1): 2, (2, 3): 2, (3, 4): 1}
    assert d_koszul_check(res, 3)
    assert not d_koszul_check(res, 2)


def test_gorenstein():
    rep = gorenstein_check_bounded(R, 4, 6)
    assert rep and rep.details["cells"] == {"3,3": 1}
    rep = gorenstein_check_bounded(free_algebra("x"), 3, 4)
    assert rep and rep.details["cells"] == {"1,1": 1}
    rep = gorenstein_check_bounded(Presentation(Quiver.build(["o"], [])), 3, 3)
    assert rep.details["cells"] == {"0,0": 1}
    assert gorenstein_check_bounded(R, 2, 6).passed is None


def test_equivariant_resolution_certificate():
    res = minimal_resolution(R3, N=4, D=6, equivariant=(action_from_grading(R3).hopf,
                                                        action_from_grading(R3)))
    assert res.certificate()
    assert res.sections and all(c.section_ok and c.h_linear for c in res.sections)


def test_equivariant_needs_counit_on_vertices():
    Q2 = Quiver.build(["a", "b"], [("u", "a", "b"), ("v", "b", "a")])
    P = Presentation(Q2)
    H = group_algebra(cyclic(2))
    swap_v = qmatrix([[0, 1], [1, 0]])
    act = HAction(H, P, [identity(2), swap_v], [identity(2), swap_v])
    with pytest.raises(ActionError):
        minimal_resolution(P, N=2, D=2, equivariant=(H, act))


def _equivariance_failure(res):
    """d(h.g) = h.d(g) on all generators, through the recorded generator action."""
    H = res.hopf
    for n in range(1, len(res.free)):
        F = res.free[n]
        for g, (v, s) in enumerate(F.gens):
            for h in range(H.dim):
                lhs: dict = {}
                for g2, c in res.gen_action[n][h].get(g, {}).items():
                    sadd(lhs, res.images[n][g2], c)
                if lhs != _happly_target(res, n, h, res.images[n][g], s):
                    return (n, g, h)
    return None


def _random_action(draw):
    kind = draw(st.sampled_from(["grading", "sign", "swap"]))
    if kind == "grading":
        n = draw(st.integers(1, 4))
        G = cyclic(n)
        gd = [G.labels[draw(st.integers(0, n - 1))] for _ in range(3)]
        P = commutative_polynomial(3, G, gd)
        act = action_from_grading(P)
        return P, act.hopf, act
    H = group_algebra(cyclic(2))
    P = commutative_polynomial(3 if kind == "sign" else 2)
    if kind == "sign":
        m = qmatrix([[draw(st.sampled_from([1, -1])) if i == j else 0 for j in range(3)]
                     for i in range(3)])
    else:
        m = qmatrix([[0, 1], [1, 0]])
    return P, H, HAction(H, P, [identity(1), identity(1)], [identity(m.shape[0]), m])


@given(st.data())
def test_equivariant_sections_property(data):
    P, H, act = _random_action(data.draw)
    res = minimal_resolution(P, N=3, D=4, equivariant=(H, act))
    assert all(c.section_ok and c.h_linear for c in res.sections)
    assert _equivariance_failure(res) is None
    plain = minimal_resolution(P, N=3, D=4)
    assert res.betti_table() == plain.betti_table()


quadratic = st.lists(st.lists(st.sampled_from([-1, 0, 1]), min_size=4, max_size=4)
                     .filter(any), min_size=1, max_size=2)


@given(quadratic)
def test_betti_invariant_under_reversed_arrow_order(coefs):
    mons = ["xx", "xy", "yx", "yy"]
    rels = [[(c, m) for c, m in zip(v, mons) if c] for v in coefs]
    P = one_vertex_presentation(["x", "y"], rels)
    Prev = one_vertex_presentation(["y", "x"], rels)
    assert minimal_resolution(P, N=3, D=4).betti_table() == \
        minimal_resolution(Prev, N=3, D=4).betti_table()
