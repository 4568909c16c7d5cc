import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from jconf import jordan as jd
from jconf import linalg as la
from jconf import minrep as mr


def rand_poly(rng, n, deg=2):
    return {m: mr.GQ.of(rng.randint(-3, 3)) for m in mr.monomials(n, deg) if rng.random() < 0.5}


def rand_op(rng, n):
    terms = {}
    for a in [(), (0,), (1,), (0, 1), (1, 1)]:
        terms[a] = rand_poly(rng, n, 2)
    return mr.PolyDiffOp(n, terms)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_composition_matches_application(seed):
    rng = random.Random(seed)
    A, B = rand_op(rng, 2), rand_op(rng, 2)
    f = rand_poly(rng, 2, 4)
    lhs = A.compose(B).apply(f)
    rhs = A.apply(B.apply(f))
    assert mr.poly_add(lhs, rhs, -1) == {}


def test_commutator_of_x_and_d_is_minus_one():
    x = mr.PolyDiffOp.multiplication(1, {(0,): mr.GQ.of(1)})
    d = mr.PolyDiffOp.directional(1, [1])
    assert d.commutator(x) == mr.PolyDiffOp.constant(1, 1)


@pytest.mark.parametrize("name", ["Sym2R", "M2R", "Sym3R", "SpinR3_1", "Sym2C"])
def test_standard_pairs_are_ambient_identities(name):
    V = jd.build_model(name)
    for key, (X, Y) in mr.standard_pairs(V).items():
        rep = mr.rep_relation_check(V, X, Y, degree=2, points=4)
        assert rep.ok, key
        assert rep.details["ambient_zero"], key


@pytest.mark.parametrize("name", ["Sym2R", "M3R", "SpinC4"])
def test_parabolic_and_linearity(name):
    V = jd.build_model(name)
    assert mr.parabolic_relation_check(V, samples=10).ok
    assert mr.linearity_check(V).ok


def test_bessel_basis_invariance_sym2r():
    assert mr.bessel_basis_invariance(jd.build_model("Sym2R"), seed=5, degree=2, points=2).ok


@pytest.mark.parametrize("name", ["Sym2R", "M2R", "Sym2C", "SpinR3_2"])
def test_key_lemma_small(name):
    rep = mr.key_lemma_at_c(jd.build_model(name), degree=3)
    assert rep.ok, rep.details
    expected = 6 if jd.build_model(name).field == "C" else 3
    assert len(rep.checks) == expected


def test_bessel_on_sym2r_degree_two():
    # tau(B, e) lowers the degree of a polynomial by one
    V = jd.build_model("Sym2R")
    m = mr.min_rep(V)
    B = m.bessel_pairing(V.real.unit)
    f = {(0, 0): mr.GQ.of(1)}
    out = B.apply(f)
    assert all(sum(1 for _ in k) <= 1 for k in out)


@pytest.mark.parametrize("delta", [1, 2])
def test_sl2_relations_symbolic(delta):
    rep = mr.sl2_relations_check(r=3, d=2, delta=delta)
    assert rep.ok
    assert len(rep.checks) == (3 if delta == 1 else 12)


@pytest.mark.parametrize("r,d,delta", [(3, 1, 1), (3, 8, 1), (2, 2, 2), (3, 4, 2)])
def test_keylemma_vs_sl2(r, d, delta):
    rep = mr.keylemma_vs_sl2_match(r, d, delta)
    assert rep.ok, rep.details


def test_sl2_relations_at_numeric_parameters():
    rep = mr.sl2_relations_check(m=1, nu=sp.Rational(3, 2) * sp.I, r=2, d=2, delta=2)
    assert rep.ok
