"""Exact rationals and sparse Laurent polynomials in v^(1/4).

Rationals are :class:`fractions.Fraction`. A :class:`QuarterLaurent` stores
exponents as integers in units of 1/4, so ``{6: 1}`` is ``v^(3/2)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "Fraction",
    "QuarterLaurent",
    "ZeroPolynomial",
    "as_fraction",
    "format_fraction",
    "parse_fraction",
    "laurent_add",
    "laurent_mul",
    "degree_hi",
    "degree_lo",
    "quantum_integer",
]


class ZeroPolynomial(ValueError):
    """Raised when a degree is requested from the zero polynomial."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'num/den' string")
    if isinstance(x, str):
        return parse_fraction(x)
    return Fraction(x)


def parse_fraction(s: str) -> Fraction:
    s = s.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ValueError(f"not an exact rational: {s!r}")
    return Fraction(s)


def format_fraction(x: Fraction) -> str:
    """Always ``num/den``, including integers (``3/1``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class QuarterLaurent:
    """Immutable Laurent polynomial in ``v^(1/4)`` with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be integers")
            acc[e] = acc.get(e, 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))

    @classmethod
    def monomial(cls, exponent4: int, coeff: int = 1) -> "QuarterLaurent":
        return cls({exponent4: coeff})

    @classmethod
    def constant(cls, c: int) -> "QuarterLaurent":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QuarterLaurent.constant(other)
        if not isinstance(other, QuarterLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __add__(self, other: "QuarterLaurent") -> "QuarterLaurent":
        return laurent_add(self, other)

    def __neg__(self) -> "QuarterLaurent":
        return QuarterLaurent((e, -c) for e, c in self._terms)

    def __sub__(self, other: "QuarterLaurent") -> "QuarterLaurent":
        return laurent_add(self, -other)

    def __mul__(self, other: "QuarterLaurent | int") -> "QuarterLaurent":
        if isinstance(other, int):
            return QuarterLaurent((e, c * other) for e, c in self._terms)
        return laurent_mul(self, other)

    __rmul__ = __mul__

    def shift(self, exponent4: int) -> "QuarterLaurent":
        """Multiply by ``v^(exponent4/4)``."""
        return QuarterLaurent((e + exponent4, c) for e, c in self._terms)

    def mirror(self) -> "QuarterLaurent":
        """Substitute ``v -> v^-1``."""
        return QuarterLaurent((-e, c) for e, c in self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(reversed(self._terms)):
            exp = Fraction(e, 4)
            mono = f"{abs(c)}*v^({exp})" if exp.denominator != 1 else f"{abs(c)}*v^({exp.numerator})"
            if i == 0:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(("+ " if c > 0 else "- ") + mono)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"QuarterLaurent({self.terms!r})"

    @classmethod
    def parse(cls, text: str) -> "QuarterLaurent":
        """Inverse of ``str()``: the canonical ``c*v^(e)`` text form."""
        text = text.strip()
        if text == "0":
            return cls()
        pattern = re.compile(r"\s*([+-])?\s*(\d+)\*v\^\(([+-]?\d+(?:/\d+)?)\)")
        pos, terms = 0, []
        while pos < len(text):
            m = pattern.match(text, pos)
            if m is None:
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            sign = -1 if m.group(1) == "-" else 1
            e4 = Fraction(m.group(3)) * 4
            if e4.denominator != 1:
                raise ValueError(f"exponent {m.group(3)} is not a multiple of 1/4")
            terms.append((int(e4), sign * int(m.group(2))))
            pos = m.end()
        return cls(terms)


def laurent_add(f: QuarterLaurent, g: QuarterLaurent) -> QuarterLaurent:
    return QuarterLaurent(list(f._terms) + list(g._terms))


def laurent_mul(f: QuarterLaurent, g: QuarterLaurent) -> QuarterLaurent:
    acc: dict[int, int] = {}
    for e1, c1 in f._terms:
        for e2, c2 in g._terms:
            acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
    return QuarterLaurent(acc)


def degree_hi(f: QuarterLaurent) -> Fraction:
    """Highest power of ``v`` in ``f``."""
    if not f._terms:
        raise ZeroPolynomial("d+ of the zero polynomial is undefined")
    return Fraction(f._terms[-1][0], 4)


def degree_lo(f: QuarterLaurent) -> Fraction:
    """Lowest power of ``v`` in ``f``."""
    if not f._terms:
        raise ZeroPolynomial("d- of the zero polynomial is undefined")
    return Fraction(f._terms[0][0], 4)


def quantum_integer(m: int) -> QuarterLaurent:
    """``[m] = (v^(m/2) - v^(-m/2)) / (v^(1/2) - v^(-1/2))``, with ``[-m] = -[m]``.

    This is the colored Jones polynomial of the unknot in the unnormalized
    convention: degrees run from ``-(m-1)/2`` to ``(m-1)/2`` in steps of 1.
    """
    if m == 0:
        return QuarterLaurent()
    if m < 0:
        return -quantum_integer(-m)
    # v^((m-1)/2 - j) for j = 0..m-1; in quarter units 2(m-1) - 4j
    return QuarterLaurent((2 * (m - 1) - 4 * j, 1) for j in range(m))
