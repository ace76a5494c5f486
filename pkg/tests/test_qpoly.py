import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cable_slopes.cabling import golden_knot, torus_knot
from cable_slopes.exactpoly import degree_hi
from cable_slopes.qpoly import (
    BelowValidity,
    InsufficientSamples,
    NoFit,
    NonConstantSlope,
    PeriodicSeq,
    PositiveLinearTerm,
    QuasiPoly,
    fit_quasipoly,
    m_constants,
    qp_eval,
)

fracs = st.builds(F, st.integers(-300, 300), st.integers(1, 12))
nonpos = st.builds(lambda x, y: -F(x, y), st.integers(0, 60), st.integers(1, 6))


def test_golden_8_20_values():
    qp = golden_knot("8_20").qp
    # 2*16/3 - 4/2 - 1/6
    assert qp_eval(qp, 4) == F(17, 2)
    assert qp_eval(qp, 6) == F(37, 2)


def test_zero_quasipolynomial():
    zero = QuasiPoly.from_residues(0, 0, 0)
    assert all(zero(n) == 0 for n in range(1, 10))


def test_below_validity():
    qp = QuasiPoly.from_residues(1, 0, 0, valid_from=5)
    with pytest.raises(BelowValidity):
        qp(4)
    assert qp(5) == 25


def test_periodic_seq_is_canonical():
    s = PeriodicSeq((F(1), F(2), F(1), F(2)))
    assert s.period == 2
    assert s == PeriodicSeq((1, 2))
    assert s(7) == 2
    assert s.expanded(6) == (1, 2, 1, 2, 1, 2)


def test_m_constants_of_goldens():
    sc = m_constants(golden_knot("8_20").qp)
    assert (sc.M1, sc.M2max) == (F(1, 3), 0)
    assert sc.thresholds() == (F(7, 3), 3)
    sc = m_constants(golden_knot("9_44").qp)
    assert sc.thresholds() == (F(13, 3), 5) and sc.M2max == 0


@given(fracs, nonpos, fracs)
def test_m_constants_single_residue(a, b, d):
    sc = m_constants(QuasiPoly.from_residues(a, b, d))
    assert sc.M1 == 0
    assert sc.M2max == max(F(0), 2 * b)


@settings(max_examples=200)
@given(
    fracs,
    st.lists(nonpos, min_size=1, max_size=4),
    st.lists(fracs, min_size=1, max_size=4),
    st.integers(1, 3),
)
def test_m_constants_ignore_how_the_period_is_written(a, b, d, k):
    qp = QuasiPoly.from_residues(a, b, d)
    P = qp.period * k
    wide = QuasiPoly.from_residues(a, list(qp.b.expanded(P)), list(qp.d.expanded(P)))
    assert m_constants(qp) == m_constants(wide)


def test_m_constants_preconditions():
    with pytest.raises(NonConstantSlope):
        m_constants(QuasiPoly.from_residues([1, 2], -1, 0))
    with pytest.raises(PositiveLinearTerm):
        m_constants(QuasiPoly.from_residues(1, F(1, 2), 0))


@settings(max_examples=200)
@given(
    st.lists(fracs, min_size=1, max_size=3),
    st.lists(fracs, min_size=1, max_size=3),
    st.lists(fracs, min_size=1, max_size=3),
    st.integers(1, 20),
)
def test_fit_round_trip(a, b, d, start):
    qp = QuasiPoly.from_residues(a, b, d)
    samples = [(n, qp_eval(qp, n)) for n in range(start, start + 40)]
    fitted = fit_quasipoly(samples, 6)
    assert (fitted.a, fitted.b, fitted.d) == (qp.a, qp.b, qp.d)
    assert fitted.valid_from == start


def test_fit_recovers_9_43():
    qp = golden_knot("9_43").qp
    fitted = fit_quasipoly([(n, qp(n)) for n in range(5, 41)], 6)
    assert fitted.period == 3
    assert fitted.a.values == (F(8, 3),)
    assert fitted.b.expanded(3) == (F(-5, 6), F(-1, 2), F(-1, 2))
    assert fitted.d.expanded(3) == (F(-7, 2), F(-13, 6), F(-13, 6))


def test_fit_recovers_9_44_slope():
    qp = golden_knot("9_44").qp
    fitted = fit_quasipoly([(n, qp(n)) for n in range(4, 41)], 6)
    assert fitted.period == 3 and fitted.a.values == (F(7, 6),)


def test_fit_constant_zero():
    fitted = fit_quasipoly([(n, 0) for n in range(1, 30)], 3)
    assert fitted == QuasiPoly.from_residues(0, 0, 0)


def test_fit_of_trefoil_cable_matches_exact_engine():
    t = torus_knot(2, 3)
    ns = range(1, 25)
    fitted = fit_quasipoly([(n, t.degree(n)) for n in ns], 2)
    assert all(fitted(n) == degree_hi(t.polynomial(n)) for n in ns if n >= fitted.valid_from)
    assert fitted.a.values == (F(3, 2),)


def test_fit_failures():
    with pytest.raises(InsufficientSamples):
        fit_quasipoly([(n, n) for n in range(1, 5)], 2)
    with pytest.raises(InsufficientSamples):
        fit_quasipoly([(1, 0), (3, 0)] + [(n, 0) for n in range(4, 20)], 2)
    with pytest.raises(NoFit):
        fit_quasipoly([(n, n**3) for n in range(1, 30)], 3)


@given(st.lists(fracs, min_size=1, max_size=3), st.lists(fracs, min_size=1, max_size=3),
       st.lists(fracs, min_size=1, max_size=3), st.integers(1, 60))
def test_mirror_negates(a, b, d, n):
    qp = QuasiPoly.from_residues(a, b, d)
    assert qp_eval(-qp, n) == -qp_eval(qp, n)


def test_json_round_trip():
    qp = golden_knot("9_43").qp
    obj = json.loads(qp.to_json())
    assert obj["period"] == 3 and obj["a"] == ["8/3"] * 3
    assert QuasiPoly.from_json(qp.to_json()) == qp
    obj["b"] = obj["b"][:2]
    with pytest.raises(ValueError):
        QuasiPoly.from_json_obj(obj)
