"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from fractions import Fraction as F

import numpy as np

from hopfsmash.actions import (action_from_grading, covering_presentation, smash_product,
                               verify_covering_iso)
from hopfsmash.cli import main
from hopfsmash.dg import (cohomology_algebra, dg_algebra, dg_smash_cohomology_check,
                          verify_dg)
from hopfsmash.ext import verify_cor_ext, verify_thm_koszul_transfer, yoneda_ext_algebra
from hopfsmash.fdalgebra import truncated_algebra
from hopfsmash.frobenius import cy_check, graded_symmetric_check
from hopfsmash.groups import cyclic, direct_product
from hopfsmash.hopf import dual_group_algebra, group_algebra, left_integral, verify_hopf_axioms
from hopfsmash.io import load_bundle
from hopfsmash.linalg import identity, matmul
from hopfsmash.modules import adjoint_phi, regular_module, resolution_piece, theta
from hopfsmash.quiver import commutative_polynomial, hilbert_function, path_element
from hopfsmash.resolution import d_koszul_check, minimal_resolution
from hopfsmash.superpotential import (Superpotential, SuperpotentialError, cyclic_derivative,
                                      ideal_equality_check, jacobian_presentation,
                                      lift_superpotential)

R = commutative_polynomial(3)
R3 = commutative_polynomial(3, cyclic(3), ["g", "g", "g"])
R2 = commutative_polynomial(3, cyclic(2), ["g", "g", "g"])
ACT3 = action_from_grading(R3)
H3 = ACT3.hopf


def verdict(n: int, failures: list) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"criterion {n}: {status}" + (f" ({'; '.join(failures)})" if failures else ""))
    assert not failures


def test_criterion_01_hopf_axioms():
    fails = []
    groups = [cyclic(n) for n in (1, 2, 3, 4, 6)] + [direct_product(cyclic(2), cyclic(2))]
    for G in groups:
        for H in (group_algebra(G), dual_group_algebra(G)):
            if not verify_hopf_axioms(H):
                fails.append(f"axioms {H.name}")
            L = left_integral(H)
            if not (L.normalized and L.semisimple
                    and sum(H.counit[k] * L.element[k] for k in range(H.dim)) == 1):
                fails.append(f"integral {H.name}")
            if not np.array_equal(matmul(H.antipode, H.antipode), identity(H.dim)):
                fails.append(f"S^2 {H.name}")
    verdict(1, fails)


def test_criterion_02_base_algebra():
    fails = []
    if hilbert_function(R, 5) != [1, 3, 6, 10, 15, 21]:
        fails.append("hilbert function")
    res = minimal_resolution(R, N=4, D=6)
    if res.betti_table() != {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}:
        fails.append(f"betti {res.betti_table()}")
    if res.free[4].gens:
        fails.append("P^-4 nonzero")
    if not d_koszul_check(res, 2):
        fails.append("2-Koszul")
    E = yoneda_ext_algebra(res, 3)
    if E.dims != [1, 3, 3, 1]:
        fails.append(f"ext dims {E.dims}")
    e1 = E.in_degree(1)
    for a in e1:
        for b in e1:
            ab, ba = E.mul({a: F(1)}, {b: F(1)}), E.mul({b: F(1)}, {a: F(1)})
            if ab != {k: -v for k, v in ba.items()}:
                fails.append(f"degree-1 products {a}, {b} do not anticommute")
    if graded_symmetric_check(E).verdict is not True:
        fails.append("graded symmetric")
    rep = cy_check(R)
    if not (rep.passed is True and rep.details["verdict"] == "Calabi-Yau of dimension 3"):
        fails.append(f"cy: {rep.first_failure}")
    verdict(2, fails)


RHO_PRIME = ["x_1*y_0 + -1*y_1*x_0", "x_2*y_1 + -1*y_2*x_1", "x_0*y_2 + -1*y_0*x_2",
             "x_1*z_0 + -1*z_1*x_0", "x_2*z_1 + -1*z_2*x_1", "x_0*z_2 + -1*z_0*x_2",
             "-1*y_1*z_0 + z_1*y_0", "-1*y_2*z_1 + z_2*y_1", "-1*y_0*z_2 + z_0*y_2"]


def test_criterion_03_covering_and_smash():
    fails = []
    S, _ = covering_presentation(R3)
    shape = (len(S.quiver.vertices), len(S.quiver.arrows), len(S.relations))
    if shape != (3, 9, 9):
        fails.append(f"shape {shape}")
    if [str(r) for r in S.relations] != RHO_PRIME:
        fails.append("relations")
    if not verify_covering_iso(R3, D=5):
        fails.append("covering iso")
    base = hilbert_function(R3, 5)
    dims = smash_product(R3, H3, ACT3, 5).dims
    if dims != [3 * d for d in base] or hilbert_function(S, 5) != dims:
        fails.append(f"smash dims {dims}")
    verdict(3, fails)


def test_criterion_04_koszul_transfer():
    rep = verify_thm_koszul_transfer(R3, H3, ACT3)
    fails = [] if rep else [rep.first_failure]
    if not (rep.details["R Koszul"] is True and rep.details["R#H Koszul"] is True):
        fails.append("Koszul verdicts")
    if not rep.details["dims E(R#H)"] == rep.details["dims E(R)#H"] == [3, 9, 9, 3]:
        fails.append(f"dims {rep.details['dims E(R#H)']} vs {rep.details['dims E(R)#H']}")
    verdict(4, fails)


def test_criterion_05_theta():
    A = truncated_algebra(R3, 2)
    th = theta(regular_module(A, H3, ACT3.truncate(A)), random_pairs=100, seed=0)
    rep = th.report
    fails = [] if rep else [rep.first_failure]
    d = rep.details
    if not (d["dim_source"] == d["dim_target"] == d["rank"] == 30):
        fails.append("bijectivity")
    if d["basis_pairs"] != 30 * 30 or d["random_pairs"] != 100:
        fails.append("coverage")
    if ("theta(id # 1) = id", True) not in rep.checks:
        fails.append("unit")
    verdict(5, fails)


def test_criterion_06_adjoint_equivariance():
    fails = []
    res = minimal_resolution(R3, N=4, D=6, equivariant=(H3, ACT3))
    for n, t in [(0, 2), (1, 2), (2, 3), (3, 4)]:
        M = resolution_piece(res, n, truncated_algebra(R3, t), t)
        rep = adjoint_phi(H3.left_regular, M, M).report
        if not rep:
            fails.append(f"P^-{n}: {rep.first_failure}")
        elif rep.details["equivariance_checks"] != H3.dim * rep.details["dim_source"]:
            fails.append(f"P^-{n}: coverage")
    verdict(6, fails)


def test_criterion_07_invariants():
    rep = verify_cor_ext(R3, H3, ACT3)
    fails = [] if rep else [rep.first_failure]
    d = rep.details
    if not d["(i) dim Ext_{R#H}(R0,R0)"] == d["(i) dim Ext_R(R0,R0)^H"] == [1, 0, 0, 1]:
        fails.append("(i)")
    if d["(iii) dims E(R#H)"] != [3, 9, 9, 3]:
        fails.append("(iii)")
    verdict(7, fails)


def test_criterion_08_cy_transfer_and_failure(capsys):
    fails = []
    S3, _ = covering_presentation(R3)
    rep = cy_check(S3)
    if not (rep.passed is True and rep.details["dimension"] == 3 and rep.exit_code == 0):
        fails.append("Z/3 positive")
    S2, _ = covering_presentation(R2)
    rep = cy_check(S2)
    if not (rep.passed is False and rep.exit_code == 1
            and rep.details["symmetric"]["details"]["reason"]
            == "only tau = 0 is graded symmetric"):
        fails.append("Z/2 refutation")
    codes = (main(["cy", "kxyz_n3", "--quiet"]), main(["cy", "kxyz_n2", "--quiet"]))
    capsys.readouterr()
    if codes != (0, 1):
        fails.append(f"exit codes {codes}")
    verdict(8, fails)


def test_criterion_09_superpotentials():
    fails = []
    W = Superpotential.from_words(R.quiver, [(1, "xyz"), (-1, "yxz")])
    expected = {"x": [(1, "yz"), (-1, "zy")], "y": [(1, "zx"), (-1, "xz")],
                "z": [(1, "xy"), (-1, "yx")]}
    for a, terms in expected.items():
        if cyclic_derivative(W, a) != path_element(R, terms):
            fails.append(f"d_{a} W")
    J = jacobian_presentation(W)
    if not ideal_equality_check(R.quiver, J.relations, R.relations, 4):
        fails.append("ideal equality")
    W3 = Superpotential.from_words(R3.quiver, [(1, "xyz"), (-1, "yxz")])
    Wl, _ = lift_superpotential(W3)
    S, _ = covering_presentation(R3)
    f = Superpotential.from_words(S.quiver, [
        (1, ["x_2", "y_1", "z_0"]), (-1, ["y_2", "x_1", "z_0"]),
        (1, ["z_2", "x_1", "y_0"]), (-1, ["x_2", "z_1", "y_0"]),
        (1, ["y_2", "z_1", "x_0"]), (-1, ["z_2", "y_1", "x_0"])])
    if Wl != f:
        fails.append("lift")
    if hilbert_function(jacobian_presentation(Wl), 5) != hilbert_function(S, 5):
        fails.append("Jacobian Hilbert function")
    try:
        lift_superpotential(Superpotential.from_words(R2.quiver, [(1, "xyz"), (-1, "yxz")]))
        fails.append("Z/2 lift did not fail")
    except SuperpotentialError as exc:
        if not str(exc).startswith("no closed lift"):
            fails.append(f"Z/2 diagnosis: {exc}")
    verdict(9, fails)


def test_criterion_10_dg_layer():
    fails = []
    mult = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
            [[0, 0, 1], [0, 0, 0], [0, 0, 0]]]
    A = dg_algebra(["1", "a", "a2"], [0, 1, 2], mult, [[0, 0, 0], [0, 0, 0], [0, 1, 0]])
    if not verify_dg(A):
        fails.append("dg axioms")
    H = cohomology_algebra(A)
    if H.dims != [1, 0, 0] or H.reps[0][1] != {0: 1}:
        fails.append(f"H(A) = {H.dims}")
    # a -> -a does not commute with d(a) = a^2, so the sign action is tested on
    # Lambda(u) (x) k[w]/(w^2) with d(u) = w and u, w negated
    b = load_bundle("dg_small")
    rep = dg_smash_cohomology_check(b.dg, group_algebra(cyclic(2)), b.dg_action)
    if not rep:
        fails.append(rep.first_failure)
    if rep.details["dims H(A#H)"] != [2, 0, 0, 2]:
        fails.append(f"H(A#H) = {rep.details['dims H(A#H)']}")
    verdict(10, fails)


def test_criterion_11_property_suites():
    import test_ext
    import test_linalg
    import test_modules
    import test_quiver
    import test_resolution
    suites = [test_linalg.test_rank_against_oracle, test_linalg.test_rank_nullity_and_kernel,
              test_linalg.test_rref_idempotent_and_pivots,
              test_linalg.test_sparse_kernel_agrees_with_dense,
              test_quiver.test_normal_form_product_is_associative,
              test_resolution.test_equivariant_sections_property,
              test_ext.test_yoneda_associativity_in_range,
              test_resolution.test_betti_invariant_under_reversed_arrow_order,
              test_modules.test_grading_action_agrees_with_hom_action]
    fails = []
    for fn in suites:
        s = getattr(fn, "_hypothesis_internal_use_settings", None)
        if not hasattr(fn, "hypothesis") or s is None or s.max_examples != 200 or not s.derandomize:
            fails.append(f"{fn.__name__}: settings")
        try:
            fn()
        except AssertionError as exc:
            fails.append(f"{fn.__name__}: {exc}")
    verdict(11, fails)
