from fractions import Fraction

import pytest

from jconf import conformal as co
from jconf import jordan as jd
from jconf import theta as th

SMALL = ["Sym3R", "Herm3C", "SpinR1_3", "M3R", "SpinR3_1", "Sym3C", "SpinC4"]


@pytest.mark.parametrize("name", SMALL)
def test_co_is_a_graded_lie_algebra(name):
    V = jd.build_model(name)
    assert co.structure_algebra(V).ok
    assert co.jacobi(V).ok
    assert co.grading_check(V).ok
    assert co.sl2_triple(V).ok


@pytest.mark.parametrize("name", SMALL)
def test_aut_dimension_matches_table(name):
    V = jd.build_model(name)
    assert co.aut_algebra(V).dim == co.aut_by_closure(V).dim == th.model_constants(name).dim_g


def test_sym3r_structure():
    V = jd.build_model("Sym3R")
    C = co.conformal_algebra(V)
    assert C.dim == 21  # sp(3,R)
    k, p, rep = co.cartan_decomposition(V)
    assert rep.ok
    assert (k.dim, p.dim) == (9, 12)  # u(3) + p
    s = co.symmetric_pair(V)
    assert s.report.ok
    assert (s.sigma_plus.dim, s.sigma_minus.dim) == (1, 2)


@pytest.mark.parametrize("name", SMALL)
def test_dual_pair(name):
    assert co.dual_pair_check(jd.build_model(name)).ok


def test_dual_pair_fails_for_abelian_aut():
    # r = 2, d = 1: aut(V) is one-dimensional and abelian, so the centralizer argument breaks
    rep = co.dual_pair_check(jd.build_model("Sym2R"))
    assert not rep.checks["Z(aut(V)) = g'"]


@pytest.mark.parametrize("name,m1,m2", [("M3R", 2, 1), ("SpinR3_1", 0, 1), ("Sym3C", 1, 0), ("M3C", 2, 1)])
def test_split_root_multiplicities(name, m1, m2):
    V = jd.build_model(name)
    rd = co.root_data(V, "split")
    assert rd.report.ok
    assert (rd.mult_1, rd.mult_2) == (m1, m2)
    assert rd.rho_coeff == Fraction(V.delta * (V.r * V.d - 2), 2)


def test_compact_root_data_sym3r():
    rd = co.root_data(jd.build_model("Sym3R"), "compact")
    assert rd.report.ok
    assert rd.eigen.get(-4, 0) == 0
    assert (rd.mult_1, rd.mult_2) == (1, 0)


def test_root_data_preconditions():
    with pytest.raises(ValueError):
        co.root_data(jd.build_model("Sym3R"), "split")
    with pytest.raises(ValueError):
        co.root_data(jd.build_model("Sym3C"), "compact")


@pytest.mark.parametrize("name", ["Sym3R", "Herm3C", "M3R", "SpinR1_3"])
def test_t0_rotation(name):
    assert co.t0_rotation_check(jd.build_model(name)).ok


@pytest.mark.parametrize("name", SMALL)
def test_symmetric_pair_and_d0(name):
    V = jd.build_model(name)
    s = co.symmetric_pair(V)
    assert s.report.ok
    assert s.sigma_plus.dim == th.model_constants(name).dim_gsigma
    assert co.d0_identities(V).ok
    assert co.aut_decomposition(V).report.ok
