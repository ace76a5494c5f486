"""Periodic sequences and quadratic quasi-polynomials ``a(n) n^2 + b(n) n + d(n)``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .exactpoly import as_fraction, format_fraction, parse_fraction

__all__ = [
    "PeriodicSeq",
    "QuasiPoly",
    "SlopeConditions",
    "BelowValidity",
    "NonConstantSlope",
    "PositiveLinearTerm",
    "NoFit",
    "InsufficientSamples",
    "qp_eval",
    "m_constants",
    "fit_quasipoly",
]


class BelowValidity(ValueError):
    pass


class NonConstantSlope(ValueError):
    pass


class PositiveLinearTerm(ValueError):
    pass


class NoFit(ValueError):
    pass


class InsufficientSamples(ValueError):
    pass


def _minimal_period(values: Sequence[Fraction]) -> int:
    p = len(values)
    for d in range(1, p + 1):
        if p % d == 0 and all(values[i] == values[i % d] for i in range(p)):
            return d
    return p


@dataclass(frozen=True)
class PeriodicSeq:
    """Values indexed by residue: ``values[i]`` is the value at ``n = i (mod period)``.

    Construction canonicalizes to the minimal period.
    """

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if not vals:
            raise ValueError("a periodic sequence needs at least one value")
        object.__setattr__(self, "values", vals[: _minimal_period(vals)])

    @classmethod
    def constant(cls, value) -> "PeriodicSeq":
        return cls((value,))

    @property
    def period(self) -> int:
        return len(self.values)

    def __call__(self, n: int) -> Fraction:
        return self.values[n % self.period]

    def expanded(self, period: int) -> tuple[Fraction, ...]:
        if period % self.period:
            raise ValueError(f"{period} is not a multiple of {self.period}")
        return tuple(self(i) for i in range(period))

    def is_constant(self) -> bool:
        return self.period == 1

    def __neg__(self) -> "PeriodicSeq":
        return PeriodicSeq(tuple(-v for v in self.values))


@dataclass(frozen=True)
class QuasiPoly:
    a: PeriodicSeq
    b: PeriodicSeq
    d: PeriodicSeq
    valid_from: int = 1

    def __post_init__(self):
        for name in ("a", "b", "d"):
            v = getattr(self, name)
            if not isinstance(v, PeriodicSeq):
                v = PeriodicSeq(tuple(v)) if isinstance(v, (list, tuple)) else PeriodicSeq.constant(v)
                object.__setattr__(self, name, v)
        if self.valid_from < 0:
            raise ValueError("valid_from must be non-negative")

    @classmethod
    def from_residues(cls, a, b, d, valid_from: int = 1) -> "QuasiPoly":
        """Build from per-residue lists or scalars."""
        def seq(x):
            if isinstance(x, (list, tuple)):
                return PeriodicSeq(tuple(x))
            return PeriodicSeq.constant(x)
        return cls(seq(a), seq(b), seq(d), valid_from)

    @property
    def period(self) -> int:
        return lcm(self.a.period, self.b.period, self.d.period)

    def __call__(self, n: int) -> Fraction:
        return qp_eval(self, n)

    def __neg__(self) -> "QuasiPoly":
        return QuasiPoly(-self.a, -self.b, -self.d, self.valid_from)

    def to_json_obj(self) -> dict:
        p = self.period
        return {
            "period": p,
            "a": [format_fraction(x) for x in self.a.expanded(p)],
            "b": [format_fraction(x) for x in self.b.expanded(p)],
            "d": [format_fraction(x) for x in self.d.expanded(p)],
            "valid_from": self.valid_from,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QuasiPoly":
        p = int(obj["period"])
        cols = {}
        for key in ("a", "b", "d"):
            vals = [parse_fraction(s) for s in obj[key]]
            if len(vals) != p:
                raise ValueError(f"field {key!r} has {len(vals)} entries, expected {p}")
            cols[key] = PeriodicSeq(tuple(vals))
        return cls(cols["a"], cols["b"], cols["d"], int(obj.get("valid_from", 1)))

    @classmethod
    def from_json(cls, text: str) -> "QuasiPoly":
        return cls.from_json_obj(json.loads(text))


@dataclass(frozen=True)
class SlopeConditions:
    """Constants controlling which cables have predictable degree.

    ``a_const`` is ``None`` when the quadratic coefficient is not constant.
    """

    a_const: Fraction | None
    M1: Fraction
    M2max: Fraction

    def thresholds(self) -> tuple[Fraction, Fraction]:
        """``(4a - M1, 4a + M1)``."""
        if self.a_const is None:
            raise NonConstantSlope("thresholds need a constant quadratic coefficient")
        return 4 * self.a_const - self.M1, 4 * self.a_const + self.M1


def qp_eval(qp: QuasiPoly, n: int) -> Fraction:
    if n < qp.valid_from:
        raise BelowValidity(f"n={n} is below valid_from={qp.valid_from}")
    return qp.a(n) * n * n + qp.b(n) * n + qp.d(n)


def m_constants(qp: QuasiPoly) -> SlopeConditions:
    """M1 and max(0, M2) by exhaustive search over residue pairs of equal parity."""
    if not qp.a.is_constant():
        raise NonConstantSlope(f"quadratic coefficient has period {qp.a.period}")
    if any(v > 0 for v in qp.b.values):
        raise PositiveLinearTerm("linear coefficient is positive on some residue")
    window = 2 * lcm(qp.period, 2)
    idx = range(window)
    pairs = [(i, j) for i in idx for j in idx if (i - j) % 2 == 0]
    b, d = qp.b, qp.d
    m1 = max(abs(b(i) - b(j)) for i, j in pairs)
    m2 = max(2 * b(i) + abs(b(i) - b(j)) + abs(d(i) - d(j)) for i, j in pairs)
    return SlopeConditions(qp.a.values[0], m1, max(Fraction(0), m2))


def _quadratic_through(points: Sequence[tuple[int, Fraction]]) -> tuple[Fraction, Fraction, Fraction]:
    (x0, y0), (x1, y1), (x2, y2) = points
    # Newton divided differences
    f01 = Fraction(y1 - y0, x1 - x0)
    f12 = Fraction(y2 - y1, x2 - x1)
    a = (f12 - f01) / (x2 - x0)
    b = f01 - a * (x0 + x1)
    d = y0 - a * x0 * x0 - b * x0
    return a, b, d


def fit_quasipoly(samples: Iterable[tuple[int, object]], max_period: int) -> QuasiPoly:
    """Recover ``a(n) n^2 + b(n) n + d(n)`` from exact samples at consecutive ``n``.

    For each period up to ``max_period`` (smallest first) every residue class
    gets the quadratic through its last three samples. A period is accepted
    only if those quadratics reproduce the final ``4 * max_period`` samples;
    ``valid_from`` is then pushed back as far as agreement continues.
    """
    if max_period < 1:
        raise ValueError("max_period must be positive")
    pts = sorted((int(n), as_fraction(y)) for n, y in samples)
    if not pts:
        raise InsufficientSamples("no samples")
    ns = [n for n, _ in pts]
    if ns != list(range(ns[0], ns[0] + len(ns))):
        raise InsufficientSamples("samples must be at consecutive n")
    required = 4 * max_period
    if len(pts) < required:
        raise InsufficientSamples(f"need at least {required} consecutive samples, got {len(pts)}")
    n_last = ns[-1]
    value = dict(pts)
    for period in range(1, max_period + 1):
        coeffs: list[tuple[Fraction, Fraction, Fraction]] = [None] * period  # type: ignore[list-item]
        for r in range(period):
            tail = [n_last - ((n_last - r) % period) - period * t for t in (2, 1, 0)]
            coeffs[r] = _quadratic_through([(n, value[n]) for n in tail])

        def agrees(n: int) -> bool:
            a, b, d = coeffs[n % period]
            return a * n * n + b * n + d == value[n]

        if not all(agrees(n) for n in ns[-required:]):
            continue
        start = n_last - required + 1
        while start - 1 >= ns[0] and agrees(start - 1):
            start -= 1
        a_s, b_s, d_s = zip(*coeffs)
        return QuasiPoly(PeriodicSeq(a_s), PeriodicSeq(b_s), PeriodicSeq(d_s), max(start, 0))
    raise NoFit(f"no quasi-polynomial of period <= {max_period} fits the samples")
