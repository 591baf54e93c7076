from math import comb

import pytest
from hypothesis import given, strategies as st

from hopfsmash.actions import covering_presentation
from hopfsmash.groups import cyclic
from hopfsmash.linalg import rank
from hopfsmash.quiver import (PathElement, Presentation, PresentationError, Quiver,
                              check_g_homogeneity, commutative_polynomial, enumerate_paths,
                              free_algebra, graded_basis, hilbert_function, normal_form,
                              one_vertex_presentation, path_element)

R = commutative_polynomial(3)
R3 = commutative_polynomial(3, cyclic(3), ["g", "g", "g"])
S3, _ = covering_presentation(R3)


def test_enumerate_paths():
    assert len(enumerate_paths(R.quiver, 2)) == 9
    assert len(enumerate_paths(S3.quiver, 0)) == 3
    from_e = enumerate_paths(S3.quiver, 2, (0, None))
    assert len(from_e) == 9
    assert {S3.quiver.vertices[p.target] for p in from_e} == {"g^2"}


def test_graded_basis_dims():
    assert graded_basis(R, 2).dim == 6
    assert graded_basis(R, 0).dim == 1
    assert graded_basis(S3, 0).dim == 3
    assert graded_basis(S3, 2).dim == 18


def test_hilbert_functions():
    assert hilbert_function(R, 5) == [comb(d + 2, 2) for d in range(6)] == [1, 3, 6, 10, 15, 21]
    assert hilbert_function(free_algebra("xyz"), 3) == [1, 3, 9, 27]
    assert hilbert_function(S3, 3) == [3, 9, 18, 30]


def test_brute_force_span_oracle_for_covering_degree_2():
    # dim S_2 = #paths - rank of the relation span in degree 2
    paths = enumerate_paths(S3.quiver, 2)
    idx = {p: i for i, p in enumerate(paths)}
    rows = [[0] * len(paths) for _ in S3.relations]
    for r, rel in zip(rows, S3.relations):
        for p, c in rel.terms.items():
            r[idx[p]] = c
    assert len(paths) - rank(rows) == 18


def test_normal_forms():
    assert not any(normal_form(path_element(R, [(1, "xy"), (-1, "yx")]), R, 2))
    assert list(normal_form(path_element(R, [(1, "yx")]), R, 2)) == \
        list(normal_form(path_element(R, [(1, "xy")]), R, 2))
    b = graded_basis(R, 2)
    for i, p in enumerate(b.basis):
        v = b.coordinates(p)
        assert v[i] == 1 and sum(1 for x in v if x) == 1


def test_g_homogeneity():
    assert check_g_homogeneity(R3)
    assert R3.quiver.gdeg(R3.quiver.path("xyz")) == R3.group.identity
    assert R3.quiver.gdeg(R3.quiver.trivial_path(0)) == R3.group.identity
    mixed = one_vertex_presentation(["x", "y", "z"], [[(1, "xy"), (-1, "zz")]], cyclic(3),
                                    ["g", "g", "e"])
    assert not check_g_homogeneity(mixed)
    same = one_vertex_presentation(["x", "y", "z"], [[(1, "xy"), (-1, "zz")]], cyclic(3),
                                   ["g", "g", "g"])
    assert check_g_homogeneity(same)


def test_presentation_errors():
    with pytest.raises(PresentationError):
        Quiver.build(["o"], [("x", "o", "p")])
    with pytest.raises(PresentationError):
        Quiver.build(["o"], [("x", "o", "o", "h")], cyclic(2))
    Q2 = Quiver.build(["a", "b"], [("u", "a", "b"), ("v", "b", "a")])
    with pytest.raises(PresentationError):
        Q2.path(["u", "u"])
    with pytest.raises(PresentationError):
        Presentation(Q2, (PathElement.from_words(Q2, [(1, ["u"]), (1, ["v"])]),))


words = st.lists(st.sampled_from("xyz"), min_size=0, max_size=3)


def _elem(P, w):
    if not w:
        return PathElement(P.quiver, {P.quiver.trivial_path(0): 1})
    return path_element(P, [(1, w)])


# k[x,y]/(x^2), with an overlap between the two relations
KXY_X2 = one_vertex_presentation(["x", "y"], [[(1, "xy"), (-1, "yx")], [(1, "xx")]])


@given(st.sampled_from([R, KXY_X2, free_algebra("xy")]), st.data())
def test_normal_form_product_is_associative(P, data):
    letters = [a.label for a in P.quiver.arrows]
    ws = [data.draw(st.lists(st.sampled_from(letters), max_size=3)) for _ in range(3)]
    alg = P.algebra
    vs = [(alg.nf(_elem(P, w)), len(w)) for w in ws]
    (a, da), (b, db), (c, dc) = vs
    left = alg.multiply(alg.multiply(a, da, b, db), da + db, c, dc)
    right = alg.multiply(a, da, alg.multiply(b, db, c, dc), db + dc)
    assert left == right
    whole = alg.nf(_elem(P, ws[0] + ws[1] + ws[2]))
    assert left == whole
