"""Degree of the colored Jones polynomial under (p, q)-cabling.

The cable's colored Jones polynomial is the sum over ``k`` in ``S_n`` of
``v^(-pk(qk+1)) J_K(2qk+1)``, shifted by ``v^(pq(n^2-1)/4)``, with
``J_K(-m) = -J_K(m)``. Two engines evaluate it:

* :func:`cable_exact` sums the Laurent polynomials literally;
* :func:`cable_degree_per_n` works with degrees only and certifies when a
  single summand dominates, which is the only case where the top degree of
  the sum is forced.

:func:`cable_quasipoly` turns the per-n maximizer pattern into the cable's
degree quasi-polynomial and checks it against an independent fit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Callable, Iterable, Mapping

import numpy as np

from .exactpoly import QuarterLaurent, as_fraction, degree_hi, format_fraction, quantum_integer
from .qpoly import (
    QuasiPoly,
    SlopeConditions,
    fit_quasipoly,
    m_constants,
    qp_eval,
)

log = logging.getLogger(__name__)

__all__ = [
    "CableParams",
    "InvalidCable",
    "NotAdmissible",
    "StabilizationFailure",
    "MissingTail",
    "DegreeProvider",
    "ClosedFormProvider",
    "ExactProvider",
    "MaxCertificate",
    "Admissibility",
    "CableQuasiPoly",
    "unknot",
    "torus_knot",
    "sample_set",
    "cable_exact",
    "cable_provider",
    "cable_degree_per_n",
    "cable_quasipoly",
    "admissible",
    "boundary_slopes_cable",
    "summand_degrees",
    "GOLDEN_KNOTS",
    "golden_knot",
    "load_closed_form",
]


class InvalidCable(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


class StabilizationFailure(RuntimeError):
    pass


class MissingTail(LookupError):
    pass


@dataclass(frozen=True)
class CableParams:
    p: int
    q: int

    def __post_init__(self):
        if self.q < 0:
            raise InvalidCable(
                f"q={self.q} < 0: use K_(-p,-q) = rK_(p,q) and pass ({-self.p}, {-self.q})"
            )
        if self.q <= 1:
            raise InvalidCable(f"q={self.q}: cables need q > 1")
        if gcd(self.p, self.q) != 1:
            raise InvalidCable(f"p={self.p} and q={self.q} are not coprime")


def _params(pq) -> CableParams:
    return pq if isinstance(pq, CableParams) else CableParams(*pq)


# ---------------------------------------------------------------------------
# degree providers


class DegreeProvider:
    """Source of ``d+[J_K(n)]`` for ``n >= 1``.

    ``qp`` is the closed-form face when one is known; ``polynomial`` is the
    exact face (only on :class:`ExactProvider`).
    """

    name: str = "knot"
    qp: QuasiPoly | None = None

    def degree(self, n: int) -> Fraction:
        raise NotImplementedError

    def has_exact(self) -> bool:
        return False

    def degrees(self, ns: Iterable[int]) -> list[Fraction]:
        return [self.degree(n) for n in ns]

    def scaled_degrees(self, upto: int) -> tuple[int, np.ndarray]:
        """``(L, arr)`` with ``arr[m] = L * d+[J_K(m)]`` integral for ``1 <= m <= upto``.

        ``L`` is a multiple of 4. ``arr[0]`` is unused. Memoized; grows by doubling.
        """
        cache = self.__dict__.get("_scaled")
        if cache is None or len(cache[1]) <= upto:
            size = max(upto + 1, 2 * (len(cache[1]) if cache else 16))
            vals = [Fraction(0)] + [self.degree(m) for m in range(1, size)]
            scale = lcm(4, *(v.denominator for v in vals))
            arr = np.array([int(v * scale) for v in vals], dtype=np.int64)
            cache = (scale, arr)
            self.__dict__["_scaled"] = cache
        return cache

    def check_consistency(self, ns: Iterable[int]) -> list[int]:
        """Colors where the closed form and the per-n degree disagree."""
        if self.qp is None:
            return []
        return [n for n in ns if n >= self.qp.valid_from and qp_eval(self.qp, n) != self.degree(n)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class ClosedFormProvider(DegreeProvider):
    """Quasi-polynomial for ``n >= valid_from`` plus an explicit table below it."""

    def __init__(self, qp: QuasiPoly, tail: Mapping[int, object] | None = None, name: str = "closed-form"):
        self.qp = qp
        self.tail = {int(n): as_fraction(v) for n, v in (tail or {}).items()}
        self.name = name
        missing = [n for n in range(1, qp.valid_from) if n not in self.tail]
        if missing:
            raise MissingTail(f"{name}: no tail degree for n in {missing}")

    def degree(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("colors start at 1")
        if n < self.qp.valid_from:
            return self.tail[n]
        return qp_eval(self.qp, n)


class ExactProvider(DegreeProvider):
    """Backed by a rule ``n -> J_K(n)`` giving exact polynomials (memoized)."""

    def __init__(self, rule: Callable[[int], QuarterLaurent], name: str = "exact", qp: QuasiPoly | None = None):
        self.name = name
        self.qp = qp
        self._poly = lru_cache(maxsize=None)(rule)

    def has_exact(self) -> bool:
        return True

    def polynomial(self, n: int) -> QuarterLaurent:
        if n < 1:
            raise ValueError("colors start at 1")
        return self._poly(n)

    def degree(self, n: int) -> Fraction:
        return degree_hi(self.polynomial(n))

    def mirror(self) -> "ExactProvider":
        """The mirror image: ``v -> v^-1`` on every colored polynomial."""
        return ExactProvider(lambda n: self.polynomial(n).mirror(), name=f"mirror({self.name})")


def unknot() -> ExactProvider:
    """``J_U(n) = [n]``; its degree is ``(n - 1)/2``, i.e. ``b_U = 1/2``."""
    qp = QuasiPoly.from_residues(0, Fraction(1, 2), Fraction(-1, 2), valid_from=1)
    return ExactProvider(quantum_integer, name="unknot", qp=qp)


def torus_knot(p: int, q: int) -> ExactProvider:
    """``T(p, q)`` as the ``(p, q)``-cable of the unknot."""
    return cable_provider(unknot(), (p, q), name=f"T({p},{q})")


# ---------------------------------------------------------------------------
# the cabling sum


def sample_set(n: int) -> list[Fraction]:
    """``S_n``: all ``k`` with ``|k| <= (n-1)/2``, integral iff ``n`` is odd."""
    if n < 1:
        raise ValueError("n must be positive")
    return [Fraction(2 * j - (n - 1), 2) for j in range(n)]


def _color(q: int, k: Fraction) -> int:
    c = 2 * q * k + 1
    assert c.denominator == 1 and c != 0, (q, k)
    return int(c)


def _twist(p: int, q: int, k: Fraction) -> Fraction:
    return -p * k * (q * k + 1)


def cable_exact(base: DegreeProvider, pq, n: int) -> QuarterLaurent:
    """Literal evaluation of the cabling sum for an exact base."""
    pq = _params(pq)
    if not base.has_exact():
        raise TypeError(f"{base!r} has no exact polynomial face")
    p, q = pq.p, pq.q
    total: dict[int, int] = {}
    for k in sample_set(n):
        c = _color(q, k)
        sign = 1 if c > 0 else -1
        shift = _twist(p, q, k) * 4
        for e, coeff in base.polynomial(abs(c)).terms.items():
            key = e + int(shift)
            total[key] = total.get(key, 0) + sign * coeff
    return QuarterLaurent(total).shift(p * q * (n * n - 1))


def cable_provider(base: DegreeProvider, pq, name: str | None = None) -> ExactProvider:
    """The cable as a new exact provider, so cables can be iterated."""
    pq = _params(pq)
    label = name or f"{base.name}_({pq.p},{pq.q})"
    return ExactProvider(lambda n: cable_exact(base, pq, n), name=label)


@dataclass(frozen=True)
class MaxCertificate:
    """Maximizer of ``f(k) = -pk(qk+1) + d+[J_K(|2qk+1|)]`` over ``S_n``.

    ``runner_up_gap`` is ``max - (second largest summand degree)``; it is
    ``None`` when ``S_n`` has a single element.
    """

    n: int
    argmax_k: Fraction
    max_value: Fraction
    runner_up_gap: Fraction | None
    unique: bool
    p: int = 0
    q: int = 0

    @property
    def implied_degree(self) -> Fraction:
        """Top degree of the cable when ``unique`` (an upper bound otherwise)."""
        return Fraction(self.p * self.q * (self.n * self.n - 1), 4) + self.max_value

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "argmax_k": format_fraction(self.argmax_k),
            "max": format_fraction(self.max_value),
            "gap": None if self.runner_up_gap is None else format_fraction(self.runner_up_gap),
            "unique": self.unique,
        }


def summand_degrees(base: DegreeProvider, pq, n: int) -> list[tuple[Fraction, Fraction]]:
    """``(k, f(k))`` for every ``k`` in ``S_n``."""
    pq = _params(pq)
    return [(k, _twist(pq.p, pq.q, k) + base.degree(abs(_color(pq.q, k)))) for k in sample_set(n)]


def cable_degree_per_n(base: DegreeProvider, pq, n: int) -> MaxCertificate:
    pq = _params(pq)
    p, q = pq.p, pq.q
    if n < 1:
        raise ValueError("n must be positive")
    j = np.arange(-(n - 1), n, 2, dtype=np.int64)  # j = 2k
    colors = np.abs(q * j + 1)
    scale, table = base.scaled_degrees(int(colors.max()))
    # -p k (q k + 1) = -p j (q j + 2) / 4
    values = (-p * j * (q * j + 2)) * (scale // 4) + table[colors]
    i = int(np.argmax(values))  # first maximizer, i.e. smallest k
    best = int(values[i])
    if len(values) > 1:
        runner_up = int(np.partition(values, len(values) - 2)[len(values) - 2])
        gap = Fraction(best - runner_up, scale)
    else:
        gap = None
    return MaxCertificate(n, Fraction(int(j[i]), 2), Fraction(best, scale), gap,
                          gap is None or gap > 0, p, q)


# ---------------------------------------------------------------------------
# admissibility and boundary slopes


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    branch: str | None  # "L" (p - (4a - M1) q < 0), "R" (p - (4a + M1) q > max(0, M2)) or None

    def __bool__(self) -> bool:
        return self.ok


def admissible(sc: SlopeConditions, pq) -> Admissibility:
    pq = _params(pq)
    lo, hi = sc.thresholds()
    if pq.p - lo * pq.q < 0:
        return Admissibility(True, "L")
    if pq.p - hi * pq.q > sc.M2max:
        return Admissibility(True, "R")
    return Admissibility(False, None)


def boundary_slopes_cable(bs: Iterable, pq) -> frozenset[Fraction]:
    """``q^2 * bs | {pq}``; the slope 1/0 is not represented."""
    pq = _params(pq)
    return frozenset({pq.q * pq.q * as_fraction(s) for s in bs} | {Fraction(pq.p * pq.q)})


# ---------------------------------------------------------------------------
# closed form for the cable


@dataclass(frozen=True)
class CableQuasiPoly:
    qp: QuasiPoly
    regime: str  # "L" when p - 4qa < 0, "R" when p - 4qa > 0
    branch: str | None  # admissibility branch that held
    conditions: SlopeConditions
    pattern: tuple[tuple[int, Fraction], ...]  # (epsilon, s) per residue mod pattern period
    fitted: QuasiPoly = field(compare=False)
    verified: bool = True

    @property
    def A(self) -> Fraction:
        return self.qp.a.values[0]

    def B(self, n: int) -> Fraction:
        return self.qp.b(n)


def _mul_lin(x: tuple[Fraction, Fraction], y: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    """(x0 n + x1)(y0 n + y1) as (n^2, n, 1) coefficients."""
    return x[0] * y[0], x[0] * y[1] + x[1] * y[0], x[1] * y[1]


def _closed_form(base: DegreeProvider, pq: CableParams, regime: str,
                 pattern: list[tuple[int, Fraction]]) -> QuasiPoly:
    p, q = pq.p, pq.q
    base_qp = base.qp
    period = lcm(len(pattern), base_qp.period, 2)
    A: list[Fraction] = []
    B: list[Fraction] = []
    D: list[Fraction] = []
    for r in range(period):
        eps, s = pattern[r % len(pattern)]
        # argmax k as a linear form alpha*n + beta on this residue class
        if regime == "L":
            k = (Fraction(eps, 2), eps * s)
        else:
            k = (Fraction(0), s)
        twist = _mul_lin((-p * k[0], -p * k[1]), (q * k[0], q * k[1] + 1))
        color = (2 * q * k[0], 2 * q * k[1] + 1)
        if color[0] == 0:
            deg = (Fraction(0), Fraction(0), base.degree(abs(int(color[1]))))
        else:
            sgn = 1 if color[0] > 0 else -1
            g, h = sgn * color[0], sgn * color[1]
            i = int(g * r + h) % base_qp.period
            a_i, b_i, d_i = base_qp.a(i), base_qp.b(i), base_qp.d(i)
            sq = _mul_lin((g, h), (g, h))
            deg = (a_i * sq[0], a_i * sq[1] + b_i * g, a_i * sq[2] + b_i * h + d_i)
        A.append(Fraction(p * q, 4) + twist[0] + deg[0])
        B.append(twist[1] + deg[1])
        D.append(Fraction(-p * q, 4) + twist[2] + deg[2])
    return QuasiPoly.from_residues(A, B, D, valid_from=1)


def _pattern_entry(regime: str, cert: MaxCertificate) -> tuple[int, Fraction] | None:
    k = cert.argmax_k
    if regime == "R":
        return (0, k)
    if k == 0:
        return None
    eps = 1 if k > 0 else -1
    return (eps, eps * k - Fraction(cert.n, 2))


def _find_period(seq: list, limit: int) -> int | None:
    for per in range(1, limit + 1):
        if all(seq[i] == seq[i + per] for i in range(len(seq) - per)):
            return per
    return None


def cable_quasipoly(base: DegreeProvider, pq, *, start: int | None = None, attempts: int = 6,
                    require_admissible: bool = True) -> CableQuasiPoly:
    """Degree quasi-polynomial of the ``(p, q)``-cable of ``base``.

    Requires a closed-form face with constant quadratic coefficient and
    non-positive linear coefficient, and an admissible ``(p, q)``. The argmax
    offsets are read off per-n certificates on a window of
    ``4 * lcm(period, 2) * q`` colors, and the resulting closed form is checked
    on a second window of the same length, then compared with an independent
    fit of the engine's degrees.

    With ``require_admissible=False`` a non-admissible ``(p, q)`` is still
    attempted (``branch`` is then ``None``); the result stands only if the
    certificates turn out unique.
    """
    pq = _params(pq)
    if base.qp is None:
        raise TypeError(f"{base!r} has no closed-form face")
    sc = m_constants(base.qp)
    adm = admissible(sc, pq)
    if not adm and (require_admissible or pq.p - 4 * pq.q * sc.a_const == 0):
        lo, hi = sc.thresholds()
        raise NotAdmissible(
            f"(p,q)=({pq.p},{pq.q}): need p - {lo}q < 0 or p - {hi}q > {sc.M2max}"
        )
    a = sc.a_const
    regime = "L" if pq.p - 4 * pq.q * a < 0 else "R"
    common = lcm(base.qp.period, 2)
    width = 4 * common * pq.q
    n0 = max(start or 1, base.qp.valid_from, 2)
    for attempt in range(attempts):
        certs = [cable_degree_per_n(base, pq, n) for n in range(n0, n0 + 2 * width)]
        first, second = certs[:width], certs[width:]
        if all(c.unique for c in certs):
            entries = [_pattern_entry(regime, c) for c in first]
            per = None if None in entries else _find_period(entries, width // 2)
            if per is not None:
                # re-index so pattern[r] belongs to n = r (mod per)
                pattern = [entries[(r - n0) % per] for r in range(per)]
                closed = _closed_form(base, pq, regime, pattern)
                if all(qp_eval(closed, c.n) == c.implied_degree for c in second):
                    return _finish(base, pq, regime, adm.branch, sc, pattern, closed, certs)
        log.debug("cable (%s,%s): no stable pattern from n=%s", pq.p, pq.q, n0)
        n0 *= 2
    raise StabilizationFailure(
        f"{base.name} cabled by ({pq.p},{pq.q}): argmax pattern did not stabilize up to n={n0}"
    )


def _finish(base, pq, regime, branch, sc, pattern, closed, certs) -> CableQuasiPoly:
    # push valid_from back while the certificate stays unique and agrees
    n = certs[0].n
    while n > 1:
        c = cable_degree_per_n(base, pq, n - 1)
        if not c.unique or qp_eval(closed, n - 1) != c.implied_degree:
            break
        n -= 1
    closed = QuasiPoly(closed.a, closed.b, closed.d, n)
    certs = list(certs)
    while len(certs) < 4 * closed.period:
        certs.append(cable_degree_per_n(base, pq, certs[-1].n + 1))
    samples = [(c.n, c.implied_degree) for c in certs]
    fitted = fit_quasipoly(samples, closed.period)
    verified = (fitted.a, fitted.b, fitted.d) == (closed.a, closed.b, closed.d)
    if verified:
        verified = all(v <= 0 for v in closed.b.values) and closed.a.is_constant()
    return CableQuasiPoly(closed, regime, branch, sc, tuple(pattern), fitted, verified)


# ---------------------------------------------------------------------------
# bundled closed forms

GOLDEN_KNOTS = ("8_20", "9_43", "9_44")


def load_closed_form(path_or_text, name: str | None = None) -> ClosedFormProvider:
    """A closed-form provider from a quasi-polynomial JSON file (or its text).

    Optional keys besides the quasi-polynomial schema: ``name``, ``bs``
    (boundary-slope candidates) and ``tail`` (``{"n": "num/den"}``).
    """
    import json
    from pathlib import Path

    text = path_or_text
    if isinstance(path_or_text, Path) or not str(path_or_text).lstrip().startswith("{"):
        text = Path(path_or_text).read_text()
    obj = json.loads(text)
    qp = QuasiPoly.from_json_obj(obj)
    prov = ClosedFormProvider(qp, obj.get("tail"), name=name or obj.get("name", "closed-form"))
    prov.bs = frozenset(as_fraction(s) for s in obj["bs"]) if "bs" in obj else None
    return prov


def golden_knot(name: str) -> ClosedFormProvider:
    """``8_20``, ``9_43`` or ``9_44``; the degree formula is taken to hold from n = 1."""
    from importlib.resources import files

    if name not in GOLDEN_KNOTS:
        raise KeyError(f"unknown golden knot {name!r}; choose from {GOLDEN_KNOTS}")
    return load_closed_form(files("cable_slopes.data").joinpath(f"{name}.json").read_text())
