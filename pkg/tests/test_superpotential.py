import pytest

from hopfsmash.actions import covering_presentation
from hopfsmash.groups import cyclic
from hopfsmash.quiver import (PathElement, commutative_polynomial, free_algebra,
                              hilbert_function, path_element)
from hopfsmash.superpotential import (CyclicWord, Superpotential, SuperpotentialError,
                                      canonical_rotation, cyclic_derivative,
                                      euler_identity_check, ideal_equality_check,
                                      jacobian_presentation, lift_superpotential)

R = commutative_polynomial(3)
R3 = commutative_polynomial(3, cyclic(3), ["g", "g", "g"])
R2 = commutative_polynomial(3, cyclic(2), ["g", "g", "g"])


def W_on(P):
    return Superpotential.from_words(P.quiver, [(1, "xyz"), (-1, "yxz")])


def test_cyclic_words():
    assert canonical_rotation((2, 0, 1)) == (0, 1, 2)
    W = W_on(R)
    assert W == Superpotential.from_words(R.quiver, [(1, "yzx"), (-1, "xzy")])
    assert CyclicWord.make(R.quiver, "zxy") == CyclicWord.make(R.quiver, "xyz")
    assert W.degree == 3


def test_cyclic_derivatives():
    W = W_on(R)
    d = {a: cyclic_derivative(W, a) for a in "xyz"}
    assert d["x"] == path_element(R, [(1, "yz"), (-1, "zy")])
    assert d["y"] == path_element(R, [(1, "zx"), (-1, "xz")])
    assert d["z"] == path_element(R, [(1, "xy"), (-1, "yx")])
    V = Superpotential.from_words(R.quiver, [(1, "xxy")])
    assert cyclic_derivative(V, "z").is_zero()


def test_euler_identity():
    assert euler_identity_check(W_on(R))


def test_jacobian_ideal_equals_commutators():
    J = jacobian_presentation(W_on(R))
    assert ideal_equality_check(R.quiver, J.relations, R.relations, 4)
    assert hilbert_function(J, 4) == hilbert_function(R, 4)
    x2 = path_element(R, [(1, "xx")])
    assert not ideal_equality_check(R.quiver, R.relations, R.relations + (x2,), 2)


def test_zero_superpotential_gives_path_algebra():
    J = jacobian_presentation(Superpotential(R.quiver, {}))
    assert J.relations == ()
    assert hilbert_function(J, 3) == hilbert_function(free_algebra("xyz"), 3)


def test_lift_matches_the_explicit_six_words():
    Wl, cov = lift_superpotential(W_on(R3))
    S, _ = covering_presentation(R3)
    f = Superpotential.from_words(S.quiver, [
        (1, ["x_2", "y_1", "z_0"]), (-1, ["y_2", "x_1", "z_0"]),
        (1, ["z_2", "x_1", "y_0"]), (-1, ["x_2", "z_1", "y_0"]),
        (1, ["y_2", "z_1", "x_0"]), (-1, ["z_2", "y_1", "x_0"])])
    assert Wl.terms == f.terms and len(Wl.terms) == 6
    dz0 = cyclic_derivative(Wl, "z_0")
    assert dz0.terms == path_element(Wl.quiver, [(1, ["x_2", "y_1"]), (-1, ["y_2", "x_1"])]).terms
    J = jacobian_presentation(Wl)
    assert ideal_equality_check(S.quiver, J.relations, S.relations, 4)
    assert hilbert_function(J, 5) == hilbert_function(S, 5)


def test_trivial_group_lift_is_w():
    R1 = commutative_polynomial(3, cyclic(1), ["e", "e", "e"])
    Wl, _ = lift_superpotential(W_on(R1))
    assert W_on(R1).words() == [("1", "x*y*z"), ("-1", "x*z*y")]
    assert Wl.words() == [("1", "x_0*y_0*z_0"), ("-1", "x_0*z_0*y_0")]


def test_no_closed_lift_for_z2():
    with pytest.raises(SuperpotentialError, match="no closed lift: x\\*y\\*z has G-degree g"):
        lift_superpotential(W_on(R2))


def test_open_word_is_rejected():
    from hopfsmash.quiver import Quiver
    Q2 = Quiver.build(["a", "b"], [("u", "a", "b"), ("v", "b", "a")])
    with pytest.raises(SuperpotentialError):
        Superpotential.from_words(Q2, [(1, ["u"])])
    assert Superpotential.from_words(Q2, [(1, ["u", "v"])]).degree == 2
