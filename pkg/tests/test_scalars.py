from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jconf.scalars import ExactScalar, TowerMismatch, format_scalar, parse_scalar

rats = st.fractions(min_value=-50, max_value=50, max_denominator=30)
towers = st.sampled_from([None, 2, 3, 5, -2, 6])


@st.composite
def scalars(draw, s=None):
    s = draw(towers) if s is None else s
    a, b = draw(rats), draw(rats)
    if s is None:
        return ExactScalar(a, b)
    return ExactScalar(a, b, draw(rats), draw(rats), s)


@st.composite
def same_tower(draw, k=3):
    s = draw(towers)
    return [draw(scalars(s=s if s is not None else None)) if s is not None
            else ExactScalar(draw(rats), draw(rats)) for _ in range(k)]


@given(same_tower())
def test_ring_axioms(xs):
    x, y, z = xs
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x - x == 0


@given(scalars())
def test_inverse(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


@given(scalars())
def test_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(scalars())
def test_conjugation_is_multiplicative_and_involutive(x):
    assert x.conj().conj() == x
    assert (x * x).conj() == x.conj() * x.conj()
    assert (x * x.conj()).is_real()


@given(rats)
def test_sqrt_squares_back(q):
    r = ExactScalar.sqrt(q)
    assert r * r == ExactScalar(q)


def test_i_squared():
    assert ExactScalar.i() * ExactScalar.i() == -1
    assert ExactScalar.sqrt(-1) == ExactScalar.i()


def test_towers_do_not_mix():
    with pytest.raises(TowerMismatch):
        ExactScalar.sqrt(2) + ExactScalar.sqrt(3)


def test_format_examples():
    assert format_scalar(ExactScalar(Fraction(-3, 2))) == "-3/2"
    assert parse_scalar("1/2+3/4*i") == ExactScalar(Fraction(1, 2), Fraction(3, 4))
