import json

import pytest

from jconf import jordan as jd

TABLE = {
    "Sym3R": (6, 3, 1, True), "Herm3C": (9, 3, 2, True), "Herm3H": (15, 3, 4, True),
    "SpinR1_3": (4, 2, 2, True), "Herm3O": (27, 3, 8, True), "M3R": (9, 3, 2, False),
    "Skew6R": (15, 3, 4, False), "SpinR3_1": (4, 2, 2, False), "Herm3Os": (27, 3, 8, False),
    "Sym3C": (6, 3, 1, False), "M3C": (9, 3, 2, False), "Skew6C": (15, 3, 4, False),
    "SpinC4": (4, 2, 2, False), "Herm3OC": (27, 3, 8, False),
}


@pytest.mark.parametrize("name", jd.CATALOG)
def test_catalog_dimensions(name):
    V = jd.build_model(name)
    n, r, d, eu = TABLE[name]
    assert (V.n, V.r, V.d, V.euclidean) == (n, r, d, eu)
    assert jd.dims_ok(V)


def test_build_by_family():
    V = jd.build_model("Sym", r=3, field="R")
    assert (V.n, V.r, V.d, V.euclidean) == (6, 3, 1, True)


@pytest.mark.parametrize("name", ["Sym3R", "M3R", "SpinR3_1", "Sym3C", "Skew6R"])
def test_axioms(name):
    V = jd.build_model(name)
    assert jd.commutativity_check(V)
    assert jd.unit_check(V)
    assert jd.jordan_identity_check(V, samples=10).ok
    assert jd.theta_check(V).ok
    assert not jd.check_frame(V, jd.standard_frame(V))


def test_peirce_blocks_m3r():
    V = jd.build_model("M3R")
    P = jd.peirce_decompose(V)
    assert P.blocks[(0, 1)].nrows() == 2
    assert not jd.peirce_mult_check(V, P)
    plus, minus = P.signs[(0, 1)]
    assert (plus.nrows(), minus.nrows()) == (1, 1)


def test_euclidean_has_no_negative_half():
    V = jd.build_model("Herm3C")
    P = jd.peirce_decompose(V)
    assert P.signs[(0, 1)][1].nrows() == 0


def test_lx_squared_sym3r():
    V = jd.build_model("Sym3R")
    P = jd.peirce_decompose(V)
    from jconf.scalars import ExactScalar
    x = [ExactScalar(jd.la.to_fraction(c)) for c in jd.la.rows_of(P.blocks[(1, 2)])[0]]
    assert jd.lx_squared_check(V, P, 0, 1, 2, x).ok


@pytest.mark.parametrize("name", ["Sym3R", "Herm3H", "Sym3C", "SpinR3_1"])
def test_json_roundtrip_is_exact(name):
    V = jd.build_model(name)
    text = json.dumps(jd.to_json(V))
    W = jd.from_json(json.loads(text))
    assert json.dumps(jd.to_json(W)) == text
    assert W == V


def test_json_rejects_extra_fields():
    obj = jd.to_json(jd.build_model("Sym3R"))
    obj["junk"] = 1
    with pytest.raises(ValueError):
        jd.from_json(obj)


@pytest.mark.parametrize("bad", ["Nonexistent", "Skew5R", "Sym3Q", ""])
def test_unknown_models(bad):
    with pytest.raises((jd.UnknownModel, ValueError)):
        jd.build_model(bad)


def test_spin_preconditions():
    with pytest.raises(ValueError):
        jd.build_model("SpinR1_1")
    assert not jd.build_model("SpinR3_2").has_minrep
    assert jd.build_model("SpinR5_3").has_minrep


def test_rank_one_points_are_rank_one():
    V = jd.build_model("M3R")
    R = V.real
    for x in jd.rank_one_points(V, 5, seed=3, real=True):
        # rank one: P(x) has rank 1 (its image is R x)
        assert R.quad(x).rank() == 1
