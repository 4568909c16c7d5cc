import json
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from jconf import theta as th
from jconf.scalars import ExactScalar

P = th.GParam


def hw(k):
    return P("EuclideanHW", k=k)


def ne(xi, mu):
    return P("NonEuclPrincipal", xi=xi, mu=Q(mu))


def aq(k):
    return P("AqModule", k=k)


def cp(m, mu):
    return P("ComplexPrincipal", m=m, mu=Q(mu))


def hol(k):
    return {"variant": "HolDiscrete", "k": str(Q(k))}


def ds(k):
    return {"variant": "Discrete", "k": str(k)}


def ps(m, nu):
    return {"variant": "Principal", "m": m, "nu": th.format_imaginary(Q(nu))}


# (model, G-parameter, expected G'-parameter); mu and nu are imaginary parts
GOLDEN = [
    ("Sym3R", hw(0), hol(Q(3, 2))),
    ("Sym3R", hw(2), hol(Q(7, 2))),
    ("Sym3R", hw(4), hol(Q(11, 2))),
    ("Sym4R", hw(0), hol(2)),
    ("Herm3C", hw(0), hol(3)),
    ("Herm3C", hw(2), hol(5)),
    ("Herm3C", hw(6), hol(9)),
    ("Herm3H", hw(0), hol(6)),
    ("Herm3H", hw(4), hol(10)),
    ("SpinR1_3", hw(0), hol(2)),
    ("SpinR1_3", hw(2), hol(4)),
    ("Herm3O", hw(0), hol(12)),
    ("Herm3O", hw(2), hol(14)),
    ("Herm3O", hw(10), hol(22)),
    ("M3R", ne(0, 2), ps(0, 1)),
    ("M3R", ne(1, -4), ps(1, 2)),
    ("Skew6R", ne(1, 3), ps(1, Q(3, 2))),
    ("Herm3Os", ne(0, 2), ps(0, 1)),
    ("SpinR3_1", ne(0, 2), ps(1, 1)),      # p - q = 2: twisted
    ("SpinR5_3", ne(0, 5), ps(1, Q(5, 2))),  # p - q = 2: twisted
    ("SpinR5_3", ne(1, 2), ps(0, 1)),
    ("SpinR4_2", ne(1, 1), ps(0, Q(1, 2))),
    ("SpinR4_4", ne(0, 6), ps(0, 3)),      # p - q = 0: untwisted
    ("SpinR6_2", ne(1, 2), ps(1, 1)),      # p - q = 4: untwisted
    ("M3R", aq(1), ds(4)),
    ("M3R", aq(-1), ds(2)),
    ("M3R", aq(3), ds(6)),
    ("Herm3Os", aq(-10), ds(2)),
    ("Herm3Os", aq(0), ds(12)),
    ("Skew6R", aq(-4), ds(2)),
    ("Skew6R", aq(2), ds(8)),
    ("SpinR3_1", aq(0), ds(2)),
    ("Sym3C", cp(2, 2), ps(2, 1)),
    ("Sym3C", cp(-2, 2), ps(2, -1)),
    ("M3C", cp(0, -4), ps(0, 2)),
    ("SpinC4", cp(1, 6), ps(1, 3)),
    ("Herm3OC", cp(3, 1), ps(3, Q(1, 2))),
]


@pytest.mark.parametrize("model,param,expected", GOLDEN)
def test_golden_lifts(model, param, expected):
    assert th.theta_lift(model, param).output.to_json() == expected


def test_golden_table_size():
    assert len(GOLDEN) >= 30


def test_twist_is_reported():
    lift = th.theta_lift("SpinR5_3", ne(0, 2))
    assert lift.twist
    assert th.theta_lift("SpinR4_4", ne(0, 2)).twist is None


def test_herm3o_cli_shape():
    lift = th.theta_lift("Herm3O", P.from_json('{"variant":"EuclideanHW","k":0}'))
    assert lift.to_json()["output"] == {"variant": "HolDiscrete", "k": "12"}
    assert lift.cover == "integral"
    assert th.theta_lift("Sym3R", hw(0)).cover == "half-integral"


@pytest.mark.parametrize("model,param", [
    ("Herm3O", '{"variant":"EuclideanHW","k":3}'),
    ("Herm3O", '{"variant":"EuclideanHW","k":-2}'),
    ("M3R", '{"variant":"AqModule","k":2}'),
    ("M3R", '{"variant":"AqModule","k":-3}'),
    ("Herm3O", '{"variant":"NonEuclPrincipal","xi":0,"mu":"2*i"}'),
    ("Sym3C", '{"variant":"EuclideanHW","k":0}'),
    ("M3R", '{"variant":"NonEuclPrincipal","xi":2,"mu":"i"}'),
    ("M3R", '{"variant":"NonEuclPrincipal","xi":0,"mu":"2"}'),
])
def test_rejections(model, param):
    with pytest.raises(th.ParamError):
        th.validate_gparam(model, P.from_json(param))


def test_malformed_json_names_the_field():
    with pytest.raises(th.ParamError, match="'k'"):
        P.from_json('{"variant":"AqModule"}')
    with pytest.raises(th.ParamError, match="mu"):
        P.from_json('{"variant":"ComplexPrincipal","m":1}')


def test_casimir_values():
    assert th.casimir_eigenvalue("Herm3O", hw(2)) == ExactScalar(Q(-3, 2))
    assert th.casimir_eigenvalue("Sym3R", hw(0)) == 0
    assert th.casimir_eigenvalue("M3R", aq(1)) == ExactScalar(Q(-5, 32))
    assert th.casimir_eigenvalue("M3R", ne(0, 2)) == ExactScalar(Q(1, 4))
    c, d = th.casimir_eigenvalue("Sym3C", cp(1, 2))
    assert (c, d) == (ExactScalar(Q(1, 32)), ExactScalar(Q(1, 4)))


def test_casimir_agrees_with_lift_on_gprime_side():
    # sl2 Casimir -1/32 (4 nu^2 - (rd/2 - 1)^2) at nu = mu / 2
    for model in ("M3R", "Herm3Os", "SpinR5_3"):
        mc = th.model_constants(model)
        for t in range(0, 5):
            p = ne(0, t)
            nu = th.theta_lift(mc, p).output.nu
            want = -Q(1, 32) * (-4 * nu * nu - (mc.rd_half - 1) ** 2)
            assert th.casimir_eigenvalue(mc, p) == ExactScalar(want)


def test_plancherel_support():
    s = th.plancherel_support("Sym3R", max_k=6)
    assert [p.k for p in s.discrete] == [0, 2, 4, 6] and not s.continuous
    s = th.plancherel_support("Herm3Os", max_k=0)
    assert s.discrete[0].k == -10 and len(s.continuous) == 2
    s = th.plancherel_support("M3C", max_k=10)
    assert not s.discrete and s.continuous[0]["m"] == "Z"
    with pytest.raises(th.NoMinimalRep, match="no minimal representation"):
        th.plancherel_support("SpinR3_2")


@pytest.mark.parametrize("model", ["Sym3R", "Herm3O", "M3R", "Herm3Os", "SpinR5_3", "Sym3C", "Herm3OC"])
def test_consistency_and_injectivity(model):
    assert th.abstract_theta_consistency(model)["ok"]
    inj = th.injectivity_check(model, max_k=40)
    assert inj["ok"], inj["clashes"]


@pytest.mark.parametrize("model,g,gs", [
    ("Herm5C", "su(5)", "s(u(1)+u(4))"), ("Skew8R", "sp(4,R)", "sp(1,R)+sp(3,R)"),
    ("SpinR5_3", "so(4,3)", "so(4,2)"), ("Herm3O", "f4", "so(9)"),
])
def test_model_constants_labels(model, g, gs):
    mc = th.model_constants(model)
    assert (mc.g_type, mc.gsigma_type) == (g, gs)


def test_model_constants_herm_d():
    assert th.model_constants("Herm4C").d == 2
    assert th.model_constants("Skew8R").d == 4


imag = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@given(st.integers(-6, 6), imag)
def test_complex_canonical_form_is_idempotent_and_lift_respects_symmetry(m, mu):
    p = cp(m, mu).canonical()
    assert p.canonical() == p
    assert p.mu >= 0
    a = th.theta_lift("SpinC4", cp(m, mu)).output
    b = th.theta_lift("SpinC4", cp(-m, -mu)).output
    if mu != 0:
        assert a == b


@given(st.sampled_from([0, 1]), imag)
def test_real_principal_lift_halves_mu(xi, mu):
    out = th.theta_lift("M3R", ne(xi, mu)).output
    assert out.nu == abs(mu) / 2 and out.m == xi


@given(st.integers(-3, 3), st.integers(-3, 3), imag, imag)
def test_complex_lift_injective_on_canonical(m1, m2, mu1, mu2):
    p1, p2 = cp(m1, mu1).canonical(), cp(m2, mu2).canonical()
    if p1 != p2:
        assert th.theta_lift("Sym3C", p1).output != th.theta_lift("Sym3C", p2).output


def test_imaginary_parsing():
    assert th.parse_imaginary("3/2*i") == Q(3, 2)
    assert th.parse_imaginary("-i") == -1
    assert th.parse_imaginary("0") == 0
    with pytest.raises(th.ParamError):
        th.parse_imaginary("2")


def test_gprime_validation():
    with pytest.raises(th.ParamError):
        th.GPrimeParam("Discrete", k=3)
    with pytest.raises(th.ParamError):
        th.GPrimeParam("HolDiscrete", k=Q(1))
    with pytest.raises(th.ParamError):
        th.GPrimeParam("Complementary", m=0, nu=Q(1, 2), delta=1)
    assert th.GPrimeParam("Complementary", m=0, nu=Q(1, 3), delta=1).canonical().nu == Q(1, 3)
    assert th.GPrimeParam("Principal", m=0, nu=Q(-1), delta=1).canonical().nu == 1
