from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cable_slopes.exactpoly import (
    QuarterLaurent,
    ZeroPolynomial,
    as_fraction,
    degree_hi,
    degree_lo,
    format_fraction,
    parse_fraction,
    quantum_integer,
)

polys = st.dictionaries(st.integers(-40, 40), st.integers(-9, 9), max_size=8).map(QuarterLaurent)
nonzero = polys.filter(lambda f: not f.is_zero())


@settings(max_examples=1000)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == QuarterLaurent()
    assert f * QuarterLaurent.constant(1) == f


@settings(max_examples=1000)
@given(nonzero, nonzero)
def test_degrees_add_under_multiplication(f, g):
    # integer coefficients, so leading terms never cancel
    assert degree_hi(f * g) == degree_hi(f) + degree_hi(g)
    assert degree_lo(f * g) == degree_lo(f) + degree_lo(g)


@given(nonzero)
def test_mirror_negates_degrees(f):
    m = f.mirror()
    assert degree_hi(m) == -degree_lo(f)
    assert m.mirror() == f


@given(polys)
def test_text_round_trip(f):
    assert QuarterLaurent.parse(str(f)) == f


def test_zero_has_no_degree():
    with pytest.raises(ZeroPolynomial):
        degree_hi(QuarterLaurent())
    with pytest.raises(ZeroPolynomial):
        degree_lo(QuarterLaurent())


def test_quantum_integers():
    assert quantum_integer(0).is_zero()
    assert quantum_integer(1) == 1
    two = quantum_integer(2)
    assert two.terms == {2: 1, -2: 1}
    for m in range(1, 12):
        q = quantum_integer(m)
        assert degree_hi(q) == Fraction(m - 1, 2)
        assert degree_lo(q) == -Fraction(m - 1, 2)
        assert quantum_integer(-m) == -q


def test_shift_moves_exponents_in_quarters():
    f = QuarterLaurent.monomial(3, 5).shift(-7)
    assert f.terms == {-4: 5}
    assert degree_hi(f) == -1


def test_fraction_helpers():
    assert parse_fraction("-7/4") == Fraction(-7, 4)
    assert parse_fraction("3") == 3
    assert format_fraction(Fraction(3)) == "3/1"
    assert format_fraction(Fraction(-1, 2)) == "-1/2"
    with pytest.raises(ValueError):
        parse_fraction("1.5")
    with pytest.raises(TypeError):
        as_fraction(0.5)
