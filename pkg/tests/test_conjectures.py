from fractions import Fraction as F

from cable_slopes.cabling import golden_knot
from cable_slopes.conjectures import (
    GridSpec,
    cable_report,
    check_conjecture_b,
    check_slope,
    reports_to_json,
    verify_grid,
)
from cable_slopes.fusion import fusion_degree
from cable_slopes.qpoly import QuasiPoly


def test_linear_term_checks():
    assert check_conjecture_b(golden_knot("8_20").qp) == (True, [])
    qp = fusion_degree((0, 2)).qp
    assert check_conjecture_b(qp) == (True, list(range(qp.period)))
    assert check_conjecture_b(QuasiPoly.from_residues(0, F(1, 2), F(-1, 2))) == (False, [])


def test_slope_containment():
    assert check_slope({F(37, 2)}, {F(37, 2), 0})
    assert not check_slope({F(37, 2)}, {0})


def test_pretzel_cable_report():
    rep = cable_report(fusion_degree((2, 1)), {4 * F(37, 8)}, (1, 2))
    assert rep.passed
    assert rep.regime == "L"
    assert rep.extra["A"] == "37/2"
    assert rep.js == {74}
    assert rep.bs_candidates == {74, 2}


def test_report_records_refusal():
    rep = cable_report(golden_knot("8_20"), {F(8, 3)}, (5, 2))
    assert not rep.passed
    assert rep.error.startswith("NotAdmissible")


def test_empty_grid():
    assert verify_grid(GridSpec.empty()) == []


def test_single_knot_grid():
    reports = verify_grid(GridSpec(m1s=(2,), m2s=(1,)))
    assert reports[0].kind == "base" and reports[0].knot == "K(2,1)"
    # thresholds 37/2 on both sides, so p ranges over 37 +- 3 for q = 2
    assert sorted(r.p for r in reports if r.q == 2) == [35, 39]
    assert all(r.passed for r in reports)


def test_grid_order_does_not_depend_on_threads():
    grid = GridSpec(m1s=(-1, 2), m2s=(1, -2), qs=(2,), p_span=1)
    assert reports_to_json(verify_grid(grid, threads=1)) == reports_to_json(verify_grid(grid, threads=4))


def test_membership_mode_surfaces_the_i4_tie():
    reports = verify_grid(GridSpec(m1s=(-1,), m2s=(4,), qs=(3,), select="membership"))
    failed = [(r.p, r.q) for r in reports if not r.passed]
    assert failed == [(109, 3)]


def test_golden_bases_in_grid():
    reports = verify_grid(GridSpec.empty(), extra_bases=[golden_knot(g) for g in ("8_20", "9_43", "9_44")])
    assert len(reports) > 3
    assert all(r.passed for r in reports)
