import copy

import pytest
from flint import fmpq

from jconf import conformal as co
from jconf import jordan as jd
from jconf import linalg as la
from jconf.liealg import (AnchorInconsistency, LieAlgebra, ad_squared_eigenspaces, casimir_pairs,
                          center, centralizer, close_under_bracket, normalized_invariant_form, realify,
                          span)


def sl2():
    # basis E, H, F
    return LieAlgebra.from_pairs(["E", "H", "F"], {
        (0, 1): {0: -2},   # [E,H] = -2E
        (0, 2): {1: 1},    # [E,F] = H
        (1, 2): {2: -2},   # [H,F] = -2F
    })


def test_sl2_jacobi_and_killing():
    L = sl2()
    assert L.antisymmetry_ok()
    assert L.jacobi_check().ok
    K = L.killing_form()
    assert K[1, 1] == 8 and K[0, 2] == 4 and K[0, 0] == 0
    assert L.invariant_form_check(K)


def test_sl2_ad_h_squared():
    L = sl2()
    eig = dict((lam, S.dim) for lam, S in ad_squared_eigenspaces(L, [0, 1, 0]))
    assert eig == {fmpq(4): 2, fmpq(0): 1}


def test_center_and_centralizer():
    L = sl2()
    assert center(L).dim == 0
    assert centralizer(L, [[0, 1, 0]]).dim == 1


def test_normalized_form_anchor_conflict():
    L = sl2()
    s, _ = normalized_invariant_form(L, [([0, 1, 0], [0, 1, 0], 2)])
    assert s == fmpq(1, 4)
    with pytest.raises(AnchorInconsistency):
        normalized_invariant_form(L, [([0, 1, 0], [0, 1, 0], 2), ([1, 0, 0], [0, 0, 1], 5)])


def test_casimir_pairs_are_dual():
    L = sl2()
    K = L.killing_form()
    for a, (x, y) in enumerate(casimir_pairs(L, K)):
        for b in range(3):
            assert la.dot(la.unit(3, b), la.matvec(K, y)) == (1 if a == b else 0)


def test_realify_dimension_and_jacobi():
    R = realify(sl2())
    assert R.dim == 6
    assert R.jacobi_check().ok
    assert R.J is not None


def test_closure_of_two_generators():
    S = close_under_bracket(sl2(), [[1, 0, 0], [0, 0, 1]])
    assert S.dim == 3


def test_jacobi_catches_a_corrupted_structure_constant():
    C = co.conformal_algebra(jd.build_model("Sym3R"))
    L = C.lie
    assert L.jacobi_check().ok
    sc = copy.deepcopy(L.sc)
    # perturb one nonzero entry, keeping antisymmetry
    a = next(a for a in sc if sc[a])
    b = next(iter(sc[a]))
    g = next(iter(sc[a][b]))
    sc[a][b][g] += 1
    sc[b][a][g] -= 1
    bad = LieAlgebra(L.labels, sc)
    assert bad.antisymmetry_ok()
    res = bad.jacobi_check()
    assert not res.ok and res.details["violations"]


def test_jacobi_sampled_mode():
    C = co.conformal_algebra(jd.build_model("Sym3R"))
    res = C.lie.jacobi_check(mode="sample", samples=200, seed=4)
    assert res.ok and res.details["mode"] == "sample"


def test_span_equality_is_basis_free():
    L = sl2()
    assert span(L, [[1, 0, 0], [0, 1, 0]]) == span(L, [[1, 1, 0], [1, -1, 0]])
