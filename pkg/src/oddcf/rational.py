"""Exact rationals, mediants and decimal rendering.

The value type is :class:`fractions.Fraction`; it already stores ``p/q`` in
lowest terms with ``q > 0`` and rejects ``q == 0``.  This module adds the
mediant, a three-way comparison and the strict ``p/q`` text form.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction

from .errors import ParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"\s*(-?)(\d+)(?:\s*/\s*(\d+))?\s*\Z")


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def rational(p, q=1) -> Fraction:
    """Build a canonical rational; ``q == 0`` raises :class:`ZeroDivisionError`."""
    return Fraction(p, q)


def mediant(a: Fraction, b: Fraction) -> Fraction:
    """Return ``(a.num + b.num) / (a.den + b.den)`` in lowest terms."""
    a, b = Fraction(a), Fraction(b)
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def compare(a: Fraction, b: Fraction) -> Ordering:
    a, b = Fraction(a), Fraction(b)
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` (optional leading ``-``) or a bare integer ``n``."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"expected p/q or an integer, got {text!r}", 0)
    sign, p, q = m.groups()
    den = int(q) if q is not None else 1
    if den == 0:
        raise ParseError("zero denominator", m.start(3))
    value = Fraction(int(p), den)
    return -value if sign else value


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _round_div(n: int, d: int, rounding: str) -> int:
    if rounding == "down":
        return n // d
    if rounding == "up":
        return -((-n) // d)
    return (2 * n + d) // (2 * d)


def format_fixed(x: Fraction, digits: int, rounding: str = "nearest") -> str:
    """Render ``x`` with ``digits`` decimals; ``rounding`` is down, up or nearest."""
    x = Fraction(x)
    scaled = _round_div(x.numerator * 10**digits, x.denominator, rounding)
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def _floor_log10(n: int, d: int) -> int:
    # largest e with 10**e <= n/d, for n, d > 0
    e = int((n.bit_length() - d.bit_length()) * 0.30102999566398120)
    while True:
        if e >= 0:
            lo_ok = 10**e * d <= n
        else:
            lo_ok = d <= n * 10 ** (-e)
        if not lo_ok:
            e -= 1
            continue
        if e + 1 >= 0:
            hi_ok = n < 10 ** (e + 1) * d
        else:
            hi_ok = n * 10 ** (-e - 1) < d
        if not hi_ok:
            e += 1
            continue
        return e


def format_scientific(x: Fraction, significant: int = 6, rounding: str = "nearest") -> str:
    """Render ``x`` as ``d.ddddde<exp>`` with directed or nearest rounding.

    Works for magnitudes far outside the float range, which the singularity
    probes produce routinely.
    """
    x = Fraction(x)
    if x == 0:
        return "0"
    neg = x < 0
    n, d = abs(x.numerator), x.denominator
    if neg and rounding in ("down", "up"):
        rounding = "up" if rounding == "down" else "down"
    e = _floor_log10(n, d)
    shift = significant - 1 - e
    if shift >= 0:
        mant = _round_div(n * 10**shift, d, rounding)
    else:
        mant = _round_div(n, d * 10 ** (-shift), rounding)
    if mant >= 10**significant:
        e += 1
        shift -= 1
        if shift >= 0:
            mant = _round_div(n * 10**shift, d, rounding)
        else:
            mant = _round_div(n, d * 10 ** (-shift), rounding)
    digits = str(mant)
    body = digits[0] + ("." + digits[1:] if len(digits) > 1 else "")
    return f"{'-' if neg else ''}{body}e{e}"
