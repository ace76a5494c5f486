"""Verdicts for the linear-term conjecture (b_K(n) <= 0) and the slope conjecture.

Jones slopes are always computed (from fitted or cable quasi-polynomials),
never copied from a table. Boundary-slope sets are candidate sets: for a
2-fusion knot the tabulated Jones slope ``4 a_K`` is taken as its known
boundary slope and pushed through the cabling transform.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Callable, Iterable, Sequence

from .cabling import (
    DegreeProvider,
    NotAdmissible,
    StabilizationFailure,
    admissible,
    boundary_slopes_cable,
    cable_quasipoly,
)
from .exactpoly import format_fraction
from .fusion import (
    FusionParams,
    Unspecified,
    cable_region_membership,
    fusion_degree,
    jones_slope_coefficient,
    region,
)
from .qpoly import NonConstantSlope, PositiveLinearTerm, QuasiPoly, m_constants

__all__ = [
    "SlopeReport",
    "GridSpec",
    "check_conjecture_b",
    "check_slope",
    "base_report",
    "cable_report",
    "provider_reports",
    "verify_grid",
    "reports_to_json",
]


@dataclass(frozen=True)
class SlopeReport:
    knot: str
    js: frozenset
    bs_candidates: frozenset
    containment: bool
    b_nonpositive: bool
    b_zero_residues: tuple[int, ...]
    kind: str = "base"
    p: int | None = None
    q: int | None = None
    regime: str | None = None
    verified: bool = True
    error: str | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return self.error is None and self.containment and self.b_nonpositive and self.verified

    def to_json_obj(self) -> dict:
        obj = {
            "knot": self.knot,
            "kind": self.kind,
            "p": self.p,
            "q": self.q,
            "js": sorted(format_fraction(x) for x in self.js),
            "bs_candidates": sorted(format_fraction(x) for x in self.bs_candidates),
            "containment": self.containment,
            "b_nonpositive": self.b_nonpositive,
            "b_zero_residues": list(self.b_zero_residues),
            "regime": self.regime,
            "verified": self.verified,
            "error": self.error,
            "passed": self.passed,
        }
        obj.update(self.extra)
        return obj


def check_conjecture_b(qp: QuasiPoly) -> tuple[bool, list[int]]:
    """(all b(i) <= 0, residues with b(i) == 0) over one canonical period."""
    values = qp.b.expanded(qp.period)
    return all(v <= 0 for v in values), [i for i, v in enumerate(values) if v == 0]


def check_slope(js: Iterable, bs: Iterable) -> bool:
    return set(js) <= set(bs)


def _js(qp: QuasiPoly) -> frozenset:
    return frozenset(4 * a for a in qp.a.values)


def base_report(name: str, qp: QuasiPoly, bs_candidates: Iterable) -> SlopeReport:
    js, bs = _js(qp), frozenset(bs_candidates)
    nonpos, zeros = check_conjecture_b(qp)
    return SlopeReport(name, js, bs, check_slope(js, bs), nonpos, tuple(zeros))


def cable_report(base: DegreeProvider, base_bs: Iterable, pq, *,
                 require_admissible: bool = True) -> SlopeReport:
    """Report for the (p, q)-cable; errors are recorded, not raised."""
    p, q = pq
    bs = boundary_slopes_cable(base_bs, pq)
    name = f"{base.name}_({p},{q})"
    try:
        res = cable_quasipoly(base, pq, require_admissible=require_admissible)
    except (NotAdmissible, StabilizationFailure) as exc:
        return SlopeReport(name, frozenset(), bs, False, False, (), "cable", p, q,
                           error=f"{type(exc).__name__}: {exc}")
    js = _js(res.qp)
    nonpos, zeros = check_conjecture_b(res.qp)
    a = res.conditions.a_const
    expected_a = {q * q * a, Fraction(p * q, 4)}
    ok_a = res.qp.a.is_constant() and res.A in expected_a
    strict = all(v < 0 for v in res.qp.b.values) if res.regime == "L" else all(v == 0 for v in res.qp.b.values)
    extra = {"A": format_fraction(res.A), "branch": res.branch, "cable_qp": res.qp.to_json_obj()}
    return SlopeReport(name, js, bs, check_slope(js, bs), nonpos, tuple(zeros), "cable", p, q,
                       res.regime, res.verified and ok_a and strict, extra=extra)


@dataclass(frozen=True)
class GridSpec:
    """Fusion parameters and cable range for a sweep.

    For every ``q`` the candidate ``p`` run from ``p_span`` below the lower
    threshold ``(4a - M1) q`` to ``p_span`` above ``(4a + M1) q + max(0, M2)``;
    ``select`` chooses whether the generic admissibility test (``admissible``)
    or the listed per-region conditions (``membership``) filter them.
    """

    m1s: Sequence[int] = tuple(range(-4, 5))
    m2s: Sequence[int] = tuple(range(-4, 5))
    qs: Sequence[int] = (2, 3)
    p_span: int = 3
    select: str = "admissible"

    @classmethod
    def empty(cls) -> "GridSpec":
        return cls(m1s=(), m2s=())


def _candidate_ps(sc, q: int, span: int) -> list[int]:
    lo, hi = sc.thresholds()
    p_lo = floor(lo * q) - span
    p_hi = ceil(hi * q + sc.M2max) + span
    return [p for p in range(p_lo, p_hi + 1) if gcd(p, q) == 1]


def provider_reports(prov: DegreeProvider, bs: Iterable, grid: GridSpec,
                     membership: Callable | None = None) -> list[SlopeReport]:
    """Base report for ``prov`` plus one report per selected cable.

    ``membership(pq)`` is the listed-condition test used when
    ``grid.select == "membership"``; it may raise :class:`Unspecified`, in
    which case the generic admissibility test decides.
    """
    bs = frozenset(bs)
    out = [base_report(prov.name, prov.qp, bs)]
    try:
        sc = m_constants(prov.qp)
    except (NonConstantSlope, PositiveLinearTerm):
        return out
    for q in grid.qs:
        for p in _candidate_ps(sc, q, grid.p_span):
            exact_ok = bool(admissible(sc, (p, q)))
            chosen = exact_ok
            if grid.select == "membership" and membership is not None:
                try:
                    chosen = membership((p, q))
                except Unspecified:
                    pass
            if not chosen:
                continue
            rep = cable_report(prov, bs, (p, q), require_admissible=False)
            rep.extra["exactly_admissible"] = exact_ok
            out.append(rep)
    return out


def _knot_reports(m1: int, m2: int, grid: GridSpec) -> list[SlopeReport]:
    params = FusionParams(m1, m2)
    reps = provider_reports(
        fusion_degree(params),
        {4 * jones_slope_coefficient(params)},
        grid,
        membership=lambda pq: cable_region_membership(params, pq),
    )
    for rep in reps:
        rep.extra["region"] = region(params)
    return reps


def verify_grid(grid: GridSpec, threads: int | None = None,
                extra_bases: Sequence[DegreeProvider] = ()) -> list[SlopeReport]:
    """Reports in ascending ``(m1, m2, q, p)`` order, then one block per extra base.

    Extra bases use their ``bs`` attribute as boundary-slope candidates when
    set, otherwise their own computed Jones slopes.
    """
    knots = [(m1, m2) for m1 in sorted(grid.m1s) for m2 in sorted(grid.m2s) if m2 not in (-1, 0)]
    if threads is None:
        threads = int(os.environ.get("CABLE_SLOPES_THREADS", "0")) or os.cpu_count() or 1
    if threads > 1 and len(knots) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda mm: _knot_reports(*mm, grid), knots))
    else:
        chunks = [_knot_reports(m1, m2, grid) for m1, m2 in knots]
    for prov in extra_bases:
        bs = getattr(prov, "bs", None)
        if bs is None:
            bs = _js(prov.qp)
        chunks.append(provider_reports(prov, bs, grid))
    return [rep for chunk in chunks for rep in chunk]


def reports_to_json(reports: Sequence[SlopeReport]) -> str:
    return json.dumps([r.to_json_obj() for r in reports], indent=2)
