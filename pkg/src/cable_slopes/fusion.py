"""Two-fusion knots K(m1, m2): degree of the colored Jones polynomial.

The top degree is governed by a piecewise quadratic lattice function
``Q(n, k1, k2)``. ``delta_closed`` picks the maximizing lattice point from
the case analysis; ``delta_bruteforce`` searches the whole lattice and
serves as its oracle. ``d+[J_K(n)] = delta(n - 1) + (n - 1)/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cabling import CableParams, ClosedFormProvider, DegreeProvider, torus_knot, _params
from .qpoly import QuasiPoly, SlopeConditions, fit_quasipoly

__all__ = [
    "FusionParams",
    "DegenerateM2",
    "OutsideLattice",
    "Unspecified",
    "SpecialForm",
    "q_lattice_value",
    "delta_bruteforce",
    "delta_closed",
    "fusion_case",
    "degree_closed",
    "fusion_degree",
    "fusion_knot",
    "region",
    "jones_slope_coefficient",
    "linear_term",
    "fusion_m_constants",
    "cable_region_membership",
    "special_forms",
    "period_bound",
    "proof_display_degree",
]

HALF = Fraction(1, 2)


class DegenerateM2(ValueError):
    """m2 in {-1, 0}: K(m1, m2) is a torus knot and the case formulas do not apply."""


class OutsideLattice(ValueError):
    pass


class Unspecified(LookupError):
    """No admissible-cable condition is listed for this region."""


@dataclass(frozen=True)
class FusionParams:
    m1: int
    m2: int

    @property
    def degenerate(self) -> bool:
        return self.m2 in (-1, 0)

    def require_generic(self) -> None:
        if self.degenerate:
            raise DegenerateM2(
                f"K({self.m1},{self.m2}) is a torus knot; use special_forms/fusion_knot"
            )


def _fp(params) -> FusionParams:
    return params if isinstance(params, FusionParams) else FusionParams(*params)


# ---------------------------------------------------------------------------
# the lattice function


def in_lattice(n: int, k1: int, k2: int) -> bool:
    return 0 <= k1 <= n and abs(n - 2 * k1) <= n + 2 * k2 <= n + 2 * k1


def q_lattice_value(params, n: int, k1: int, k2: int) -> Fraction:
    p = _fp(params)
    if not in_lattice(n, k1, k2):
        raise OutsideLattice(f"(n,k1,k2)=({n},{k1},{k2})")
    m1, m2 = p.m1, p.m2
    ell = min(2 * k1 + n, 2 * k1 + k2 + n, k2 + 2 * n)
    poly = (
        Fraction(k1, 2) - Fraction(3 * k1 * k1, 2) - 3 * k1 * k2 - k2 * k2
        - k1 * m1 - k1 * k1 * m1 - k2 * m2 - k2 * k2 * m2 - 6 * k1 * n
        - 3 * k2 * n + 2 * m1 * n + 4 * m2 * n - k2 * m2 * n
        - 2 * n * n + m1 * n * n + 2 * m2 * n * n
    )
    return poly + Fraction((1 + 8 * k1 + 4 * k2 + 8 * n) * ell - 3 * ell * ell, 2)


@lru_cache(maxsize=256)
def _lattice(n: int) -> tuple[np.ndarray, np.ndarray]:
    k1, k2 = np.meshgrid(np.arange(n + 1), np.arange(-n, n + 1), indexing="ij")
    s = n + 2 * k2
    mask = (np.abs(n - 2 * k1) <= s) & (s <= n + 2 * k1)
    return k1[mask].astype(np.int64), k2[mask].astype(np.int64)


def _twice_q_max(m1: int, m2: int, n: int) -> int:
    """max over the lattice of 2Q, evaluated term by term on integer arrays."""
    k1, k2 = _lattice(n)
    ell = np.minimum(np.minimum(2 * k1 + n, 2 * k1 + k2 + n), k2 + 2 * n)
    twice = (
        k1 - 3 * k1**2 - 6 * k1 * k2 - 2 * k2**2 - 2 * k1 * m1 - 2 * k1**2 * m1
        - 2 * k2 * m2 - 2 * k2**2 * m2 - 12 * k1 * n - 6 * k2 * n + 4 * m1 * n
        + 8 * m2 * n - 2 * k2 * m2 * n - 4 * n * n + 2 * m1 * n * n + 4 * m2 * n * n
        + (1 + 8 * k1 + 4 * k2 + 8 * n) * ell - 3 * ell**2
    )
    return int(twice.max())


def _c2_correction(m1: int, m2: int, n: int) -> Fraction:
    c3 = _c3(m1, m2, n)
    return c3 + HALF if (c3 - HALF).denominator == 1 else Fraction(0)


def delta_bruteforce(params, n: int) -> Fraction:
    """Lattice maximum of Q (less the half-integer correction in case C-2)."""
    p = _fp(params)
    p.require_generic()
    value = Fraction(_twice_q_max(p.m1, p.m2, n), 2)
    if fusion_case(p) == "C-2":
        value -= _c2_correction(p.m1, p.m2, n)
    return value


# ---------------------------------------------------------------------------
# case analysis


def fusion_case(params) -> str:
    p = _fp(params)
    p.require_generic()
    m1, m2 = p.m1, p.m2
    if m2 >= 1:
        if m1 >= 1:
            return "A"
        if 1 + m1 + m2 <= 0 or 1 + 2 * m1 + m2 < 0:
            return "B-1"
        return "B-2"
    return "C-1" if 2 * m1 <= -3 * m2 else "C-2"


def _nearest(c: Fraction) -> list[int]:
    f = math.floor(c)
    frac = c - f
    if frac == HALF:
        return [f, f + 1]
    return [f] if frac < HALF else [f + 1]


def _c1(m1, m2, n):
    return Fraction(1 - m1 + m2 + m2 * n, 2 * (-1 + m1 + m2))


def _c2(m1, m2, n):
    return Fraction(1 - m1 - m2 + (1 + m2) * n, 2 * (1 + m1 + m2))


def _c3(m1, m2, n):
    return Fraction(Fraction(-3, 2) + m1 + m2 + (1 + m2) * n, 1 - 2 * m1 - 2 * m2)


def _best(p: FusionParams, n: int, ks: list[int], k2_of) -> tuple[int, Fraction]:
    vals = {k: q_lattice_value(p, n, k, k2_of(k)) for k in sorted(set(ks))}
    top = max(vals.values())
    if len(vals) == 2:
        # both closest integers must give the same value
        assert len(set(vals.values())) == 1, (p, n, vals)
    return min(k for k, v in vals.items() if v == top), top


def _closed_point(p: FusionParams, n: int) -> tuple[str, int, Fraction, Fraction]:
    """(case, k1, c, delta) for the case analysis."""
    case = fusion_case(p)
    m1, m2 = p.m1, p.m2
    if case == "A":
        c = _c1(m1, m2, n)
        cap = n // 2
        ks = [cap] if c >= cap else [min(max(k, 0), cap) for k in _nearest(c)]
        k, val = _best(p, n, ks, lambda k: -k)
    elif case == "B-1":
        c, k, val = Fraction(n), n, q_lattice_value(p, n, n, 0)
    elif case == "B-2":
        c = _c2(m1, m2, n)
        # the lattice needs n/2 <= k1 <= n when k2 = k1 - n
        lo = (n + 1) // 2
        k, val = _best(p, n, [min(max(k, lo), n) for k in _nearest(c)], lambda k: k - n)
    elif case == "C-1":
        c, k, val = Fraction(n), n, q_lattice_value(p, n, n, n)
    else:
        c = _c3(m1, m2, n)
        k, val = _best(p, n, [min(max(k, 0), n) for k in _nearest(c)], lambda k: k)
        val -= _c2_correction(m1, m2, n)
    return case, k, c, val


def delta_closed(params, n: int) -> Fraction:
    p = _fp(params)
    p.require_generic()
    if n < 0:
        raise ValueError("n must be non-negative")
    return _closed_point(p, n)[3]


def degree_closed(params, n: int) -> Fraction:
    """``d+[J_K(n)]`` for ``n >= 1`` from the case analysis."""
    return delta_closed(params, n - 1) + Fraction(n - 1, 2)


# ---------------------------------------------------------------------------
# regions and tables


def region(params) -> str:
    p = _fp(params)
    p.require_generic()
    m1, m2 = p.m1, p.m2
    if m2 >= 1:
        if m1 >= 2:
            return "I1"
        if m1 == 1:
            return "I2"
        if 0 >= m1 and 2 * m1 >= -(m2 + 1):
            return "I4"
        return "I3"
    return "I5" if 2 * m1 <= -3 * m2 else "I6"


def _i6_divisible(m1: int, m2: int, n: int) -> bool:
    return (-1 + (1 + m2) * (n - 1)) % (-1 + 2 * m1 + 2 * m2) == 0


def jones_slope_coefficient(params) -> Fraction:
    """``a_K``; the Jones slope is ``4 a_K``."""
    p = _fp(params)
    m1, m2 = p.m1, p.m2
    r = region(p)
    if r in ("I1", "I2"):
        return m1 + 2 * m2 + HALF + Fraction(m2 * m2, 4 * (-1 + m1 + m2))
    if r == "I3":
        return HALF + 2 * m2
    if r == "I4":
        return Fraction(3 + 3 * m1 + 9 * m2, 4) + Fraction(m1 * m1, 4 * (1 + m1 + m2))
    if r == "I5":
        return Fraction(0)
    return Fraction((2 * m1 + 3 * m2) ** 2, 2 * (-1 + 2 * m1 + 2 * m2))


def linear_term(params, n: int) -> Fraction:
    """``b_K(n)``."""
    p = _fp(params)
    m1, m2 = p.m1, p.m2
    r = region(p)
    if r in ("I1", "I2"):
        return Fraction(m2 * (1 - m1), 2 * (-1 + m1 + m2))
    if r == "I3":
        return Fraction(1 + m1)
    if r == "I4":
        return Fraction(m1 * (m2 - 1), 2 * (1 + m1 + m2))
    if r == "I5":
        return Fraction(5, 2) + m1 + 3 * m2
    den = 2 * (-1 + 2 * m1 + 2 * m2)
    if _i6_divisible(m1, m2, n):
        return Fraction((-3 + 2 * m1) * (1 + m2), den)
    return Fraction((-5 + 2 * m1) * (1 + m2), den)


def fusion_m_constants(params) -> SlopeConditions:
    """Closed-form M1 and max(0, M2) per region.

    In I6 the magnitude ``-(1 + m2)/(2 m1 + 2 m2 - 1)`` is returned, since
    ``1 + m2 < 0`` there and M1 is a maximum of absolute values.
    """
    p = _fp(params)
    m1, m2 = p.m1, p.m2
    r = region(p)
    zero = Fraction(0)
    m1_const = abs(Fraction(1 + m2, -1 + 2 * m1 + 2 * m2)) if r == "I6" else zero
    if r == "I1":
        m2max = Fraction((1 - m1 + m2) ** 2, 4 * (m1 + m2 - 1))
    elif r == "I2":
        m2max = Fraction(3 * m2, 4)
    elif r in ("I3", "I5"):
        m2max = zero
    elif r == "I4":
        m2max = max(Fraction(m1 + m2 - 1, 4) + Fraction(m1 * (m2 - 1), m1 + m2 + 1), zero)
    else:
        d = 2 * m1 + 2 * m2 - 1
        m2max = max(Fraction(d, 8) + Fraction((2 * m1 - 6) * (m2 + 1), d), zero)
    return SlopeConditions(jones_slope_coefficient(p), m1_const, m2max)


def cable_region_membership(params, pq) -> bool:
    """Is ``(p, q)`` in the listed admissible-cable set for K(m1, m2)?

    Conditions are listed for I1, I2, I4 and I6 only; other regions raise
    :class:`Unspecified` (use :func:`cabling.admissible` with
    :func:`fusion_m_constants` there).
    """
    fp = _fp(params)
    pq = _params(pq)
    m1, m2 = fp.m1, fp.m2
    p, q = pq.p, pq.q
    r = region(fp)
    if r == "I1":
        t = 4 * m1 + 8 * m2 + 2 + Fraction(m2 * m2, m1 + m2 - 1)
        return p - t * q < 0 or p - t * q > Fraction((1 - m1 + m2) ** 2, 4 * (m1 + m2 - 1))
    if r == "I2":
        t = 9 * m2 + 6
        return p - t * q > Fraction(3 * m2, 4) or p - t * q < 0
    if r == "I4":
        t = 3 * m1 + 9 * m2 + 3 + Fraction(m1 * m1, m1 + m2 + 1)
        bound = max(Fraction(m1 + m2 - 1, 4) + Fraction(m1 * (m2 - 1), m1 + m2 + 1), Fraction(0))
        return p - t * q < 0 or p - t * q > bound
    if r == "I6":
        d = 2 * m1 + 2 * m2 - 1
        lo = Fraction(2 * (2 * m1 + 3 * m2) ** 2 + m2 + 1, d)
        hi = Fraction(2 * (2 * m1 + 3 * m2) ** 2 - (m2 + 1), d)
        bound = max(Fraction(d, 8) + Fraction((2 * m1 - 6) * (m2 + 1), d), Fraction(0))
        return p - lo * q < 0 or p - hi * q > bound
    raise Unspecified(f"no cable condition is listed for region {r}")


# ---------------------------------------------------------------------------
# special forms


@dataclass(frozen=True)
class SpecialForm:
    """A known identification of K(m1, m2).

    ``kind`` is ``"torus"`` (``T(2, torus_q)``) or ``"mirror"`` (mirror image
    of ``K(*mirror_of)``).
    """

    kind: str
    torus_q: int | None = None
    mirror_of: tuple[int, int] | None = None

    @property
    def trivial(self) -> bool:
        return self.kind == "torus" and abs(self.torus_q) == 1

    def __str__(self) -> str:
        if self.kind == "torus":
            return f"T(2,{self.torus_q})" + (" (unknot)" if self.trivial else "")
        return f"mirror of K{self.mirror_of}"


def special_forms(params) -> SpecialForm | None:
    p = _fp(params)
    m1, m2 = p.m1, p.m2
    if m2 == 0:
        return SpecialForm("torus", torus_q=2 * m1 + 1)
    if m2 == -1:
        return SpecialForm("torus", torus_q=2 * m1 - 3)
    if (m1, m2) == (-1, 1):
        return SpecialForm("torus", torus_q=5)
    if m1 == 1:
        return SpecialForm("mirror", mirror_of=(0, -m2 - 1))
    return None


# ---------------------------------------------------------------------------
# degree providers


def period_bound(params) -> int:
    """A multiple of the period of ``d+[J_K(n)]``, from the denominators of c1, c2, c3."""
    p = _fp(params)
    m1, m2 = p.m1, p.m2
    case = fusion_case(p)
    if case == "A":
        return 2 * (m1 + m2 - 1)
    if case == "B-2":
        return 2 * (1 + m1 + m2)
    if case == "C-2":
        return 2 * (2 * m1 + 2 * m2 - 1)
    return 1


@lru_cache(maxsize=None)
def _fusion_qp(m1: int, m2: int) -> tuple[QuasiPoly, dict[int, Fraction]]:
    p = FusionParams(m1, m2)
    bound = period_bound(p)
    n_max = 6 * bound + 16
    samples = [(n, degree_closed(p, n)) for n in range(1, n_max + 1)]
    qp = fit_quasipoly(samples, bound)
    qp = QuasiPoly(qp.a, qp.b, qp.d, max(qp.valid_from, 1))
    tail = {n: v for n, v in samples if n < qp.valid_from}
    return qp, tail


def fusion_degree(params) -> ClosedFormProvider:
    """Closed-form degree provider for K(m1, m2), m2 not in {-1, 0}.

    The quasi-polynomial is fitted to the case-analysis degrees; colors below
    its ``valid_from`` come from an exact tail table.
    """
    p = _fp(params)
    p.require_generic()
    qp, tail = _fusion_qp(p.m1, p.m2)
    return ClosedFormProvider(qp, tail, name=f"K({p.m1},{p.m2})")


def fusion_knot(params) -> DegreeProvider:
    """Like :func:`fusion_degree`, but torus cases go to the exact engine."""
    p = _fp(params)
    if p.degenerate:
        form = special_forms(p)
        return torus_knot(form.torus_q, 2)
    return fusion_degree(p)


def proof_display_degree(params, n: int) -> Fraction:
    """``d+[J_K(n)]`` from the per-case displays with ``r_{n-1} = k1 - c``.

    In case C-2, when ``c3`` is a half-integer the correction ``-(c3 + 1/2)``
    contributes ``(-2 - m2)/(2 m1 + 2 m2 - 1)`` to the constant term as well
    as switching the linear coefficient; that constant is included here.
    """
    p = _fp(params)
    m1, m2 = p.m1, p.m2
    a, b = jones_slope_coefficient(p), linear_term(p, n)
    case = fusion_case(p)
    if case == "B-1":
        return a * n * n + b * n - (Fraction(3, 2) + m1 + 2 * m2)
    if case == "C-1":
        return (Fraction(5, 2) + m1 + 3 * m2) * (n - 1)
    _, k, c, _ = _closed_point(p, n - 1)
    r = k - c
    if case == "A":
        const = m1 + 2 * m2 + HALF - Fraction((1 - m1) ** 2, 4 * (-1 + m1 + m2))
        return a * n * n + b * n - const + (1 - m1 - m2) * r * r
    if case == "B-2":
        const = Fraction(3 + 3 * m1 + 9 * m2, 4) - Fraction((m2 - 1) ** 2, 4 * (1 + m1 + m2))
        return a * n * n + b * n - const + (-1 - m1 - m2) * r * r
    d = 2 * m1 + 2 * m2 - 1
    const = HALF + m1 + 2 * m2 - Fraction((2 * m1 - 5) ** 2, 8 * d)
    value = a * n * n + b * n - const + (HALF - m1 - m2) * r * r
    if _c2_correction(m1, m2, n - 1):
        value += Fraction(-2 - m2, d)
    return value
