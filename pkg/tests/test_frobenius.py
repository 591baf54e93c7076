import pytest

from hopfsmash import frobenius
from hopfsmash.actions import action_from_grading, covering_presentation, smash_fd
from hopfsmash.ext import h_action_on_ext, yoneda_ext_algebra
from hopfsmash.fdalgebra import AlgebraError, FDAlgebra, from_dense
from hopfsmash.frobenius import cy_check, graded_symmetric_check
from hopfsmash.groups import cyclic
from hopfsmash.io import load_bundle
from hopfsmash.quiver import commutative_polynomial
from hopfsmash.resolution import minimal_resolution

R = commutative_polynomial(3)
E_R = yoneda_ext_algebra(minimal_resolution(R, N=4, D=6), 3)


def _mult(n, products):
    m = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        m[0][i][i] = m[i][0][i] = 1
    for (i, j), k in products.items():
        m[i][j][k] = 1
    return m


def test_exterior_algebra_is_graded_symmetric():
    cert = graded_symmetric_check(E_R)
    assert cert.verdict is True and cert.top == 3
    top = E_R.to_fd().basis_in_degree(3)
    assert cert.tau == {top[0]: 1}
    assert cert.method == "symbolic" and cert.space_dim == 1


def test_ground_field():
    k = from_dense(["1"], [0], [[[1]]])
    cert = graded_symmetric_check(k)
    assert cert.verdict is True and cert.top == 0


def test_smash_with_z2_dual_is_refuted():
    P = commutative_polynomial(3, cyclic(2), ["g", "g", "g"])
    act = action_from_grading(P)
    res = minimal_resolution(P, N=4, D=6, equivariant=(act.hopf, act))
    E = yoneda_ext_algebra(res, 3)
    EA = h_action_on_ext(res, act.hopf, E).action()
    cert = graded_symmetric_check(smash_fd(EA.target, act.hopf, EA))
    assert cert.verdict is False
    assert cert.reason == "only tau = 0 is graded symmetric"


def test_degenerate_for_every_tau():
    # 1, u, w in degree 2, t in degree 4, u u = t and all other products vanish
    A = from_dense(["1", "u", "w", "t"], [0, 2, 2, 4], _mult(4, {(1, 1): 3}))
    cert = graded_symmetric_check(A)
    assert cert.verdict is False
    assert cert.reason == "pairing E^2 x E^2 is degenerate for every admissible tau"
    assert cert.determinants[2] == "0"


def test_dimension_mismatch():
    A = from_dense(["1", "u", "w"], [0, 1, 1], _mult(3, {}))
    assert graded_symmetric_check(A).verdict is False


def test_non_unital_input_raises():
    A = FDAlgebra(("a",), (0,), (0,), {}, {})
    with pytest.raises(AlgebraError):
        graded_symmetric_check(A)


def test_sampled_route_agrees(monkeypatch):
    monkeypatch.setattr(frobenius, "SYMBOLIC_LIMIT", 0)
    cert = graded_symmetric_check(E_R)
    assert cert.verdict is True and cert.method == "sampled"


def test_certificate_report_is_self_verifying():
    cert = graded_symmetric_check(E_R)
    rep = cert.report()
    assert rep and rep.details["tau"] == {"E3[o,3]#0": 1}


def test_cy_checks():
    rep = cy_check(R)
    assert rep and rep.details["verdict"] == "Calabi-Yau of dimension 3"
    S3, _ = covering_presentation(commutative_polynomial(3, cyclic(3), ["g", "g", "g"]))
    rep = cy_check(S3)
    assert rep and rep.details["dimension"] == 3 and rep.details["ext_dims"] == [3, 9, 9, 3]
    S2, _ = covering_presentation(commutative_polynomial(3, cyclic(2), ["g", "g", "g"]))
    rep = cy_check(S2)
    assert rep.passed is False and rep.exit_code == 1
    assert cy_check(R, N=3).passed is None


def test_cubic_base_is_not_cy_but_its_covering_is():
    b = load_bundle("dcubic")
    assert cy_check(b.presentation, d=3, D=7).passed is False
    S, _ = covering_presentation(b.presentation)
    rep = cy_check(S, d=3, D=7)
    assert rep and rep.details["dimension"] == 3
