from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cable_slopes.cabling import (
    InvalidCable,
    NotAdmissible,
    admissible,
    boundary_slopes_cable,
    cable_degree_per_n,
    cable_exact,
    cable_provider,
    cable_quasipoly,
    golden_knot,
    load_closed_form,
    sample_set,
    summand_degrees,
    torus_knot,
    unknot,
)
from cable_slopes.exactpoly import QuarterLaurent, degree_hi, degree_lo
from cable_slopes.qpoly import fit_quasipoly, m_constants

coprime = st.tuples(st.integers(-20, 20), st.integers(2, 4)).filter(lambda pq: gcd(*pq) == 1)


def test_sample_set():
    assert sample_set(1) == [0]
    assert sample_set(2) == [F(-1, 2), F(1, 2)]
    assert sample_set(5) == [-2, -1, 0, 1, 2]


def test_unknot_cable_small_colors():
    u = unknot()
    assert cable_exact(u, (2, 3), 1) == QuarterLaurent.constant(1)
    assert degree_hi(cable_exact(u, (2, 3), 2)) == F(9, 2)


def test_certificates_for_trefoil_pattern():
    u = unknot()
    c1 = cable_degree_per_n(u, (2, 3), 1)
    assert (c1.argmax_k, c1.max_value, c1.runner_up_gap, c1.unique) == (0, 0, None, True)
    c2 = cable_degree_per_n(u, (2, 3), 2)
    assert (c2.argmax_k, c2.max_value, c2.runner_up_gap, c2.unique) == (F(-1, 2), 0, 1, True)
    assert c2.implied_degree == F(9, 2)
    assert c2.to_json_obj() == {"n": 2, "argmax_k": "-1/2", "max": "0/1", "gap": "1/1", "unique": True}


@settings(max_examples=150, deadline=None)
@given(coprime, st.integers(1, 25), st.sampled_from(["8_20", "9_43", "9_44", "unknot"]))
def test_vectorized_engine_matches_reference(pq, n, which):
    base = unknot() if which == "unknot" else golden_knot(which)
    cert = cable_degree_per_n(base, pq, n)
    rows = summand_degrees(base, pq, n)
    best = max(v for _, v in rows)
    assert cert.max_value == best
    assert cert.argmax_k == min(k for k, v in rows if v == best)
    if len(rows) > 1:
        second = sorted((v for _, v in rows), reverse=True)[1]
        assert cert.runner_up_gap == best - second


@settings(max_examples=60, deadline=None)
@given(coprime, st.integers(1, 14))
def test_exact_degree_is_bounded_by_certificate(pq, n):
    base = torus_knot(2, 3)
    cert = cable_degree_per_n(base, pq, n)
    d = degree_hi(cable_exact(base, pq, n))
    if cert.unique:
        assert d == cert.implied_degree
    else:
        assert d <= cert.implied_degree


def test_iterated_cable_is_exact():
    t = torus_knot(2, 3)
    c = cable_provider(t, (13, 2))
    for n in range(1, 6):
        cert = cable_degree_per_n(c, (3, 2), n)
        if cert.unique:
            assert degree_hi(cable_exact(c, (3, 2), n)) == cert.implied_degree


def test_torus_knot_symmetry():
    for n in range(1, 9):
        assert torus_knot(3, 2).degree(n) == torus_knot(2, 3).degree(n)


def test_mirror_identity_on_exact_polynomials():
    t = torus_knot(2, 3)
    m = torus_knot(-2, 3)
    for n in range(1, 8):
        assert degree_lo(t.polynomial(n)) == -degree_hi(m.polynomial(n))
        assert t.mirror().polynomial(n) == m.polynomial(n)


@pytest.mark.parametrize("pq", [(3, -2), (3, 1), (3, 0), (4, 2)])
def test_invalid_cables(pq):
    with pytest.raises(InvalidCable):
        cable_degree_per_n(unknot(), pq, 3)


def test_negative_q_message_points_at_mirror():
    with pytest.raises(InvalidCable, match=r"\(-3, 2\)"):
        cable_exact(unknot(), (3, -2), 2)


def test_admissibility_on_goldens():
    sc = m_constants(golden_knot("8_20").qp)
    assert admissible(sc, (1, 2)).branch == "L"
    assert not admissible(sc, (5, 2))
    assert admissible(sc, (7, 2)).branch == "R"
    sc = m_constants(golden_knot("9_43").qp)
    assert admissible(sc, (23, 2)).branch == "R"


def test_boundary_slopes():
    assert boundary_slopes_cable([], (2, 3)) == {6}
    assert boundary_slopes_cable([0], (2, 3)) == {0, 6}
    assert boundary_slopes_cable([F(8, 3)], (1, 2)) == {F(32, 3), 2}


def test_8_20_cable_left_regime():
    base = golden_knot("8_20")
    res = cable_quasipoly(base, (1, 2))
    assert res.regime == "L" and res.branch == "L"
    assert res.A == 4 * F(2, 3)
    assert all(v < 0 for v in res.qp.b.values)
    assert res.verified
    cert = cable_degree_per_n(base, (1, 2), 15)
    assert cert.unique and cert.implied_degree == res.qp(15)


def test_8_20_cable_right_regime():
    res = cable_quasipoly(golden_knot("8_20"), (7, 2))
    assert (res.regime, res.A) == ("R", F(7, 2))
    assert res.qp.b.values == (0,)
    assert res.verified


def test_degree_zero_base():
    base = load_closed_form('{"period": 1, "a": ["0"], "b": ["0"], "d": ["0"]}')
    res = cable_quasipoly(base, (1, 2))
    assert (res.regime, res.A) == ("R", F(1, 2))
    assert res.qp.b.values == (0,)


def test_non_admissible_is_refused():
    with pytest.raises(NotAdmissible):
        cable_quasipoly(golden_knot("8_20"), (5, 2))


@pytest.mark.parametrize("pq", [(1, 2), (7, 2), (-5, 3), (17, 3)])
def test_closed_form_agrees_with_fit(pq):
    base = golden_knot("9_44")
    res = cable_quasipoly(base, pq)
    P = res.qp.period
    v0 = res.qp.valid_from
    fitted = fit_quasipoly(
        [(n, cable_degree_per_n(base, pq, n).implied_degree) for n in range(v0, v0 + 8 * P)], P)
    assert (fitted.a, fitted.b, fitted.d) == (res.qp.a, res.qp.b, res.qp.d)
