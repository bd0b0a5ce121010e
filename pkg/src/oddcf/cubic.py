"""Exact arithmetic in Q(L), L the real root of t^3 - t^2 - t - 1.

Elements are stored in the basis {1, L, L^2} as three integer numerators
over one positive common denominator, so equality is coefficient equality.
Real values are only ever reached through certified rational enclosures of
L; no floating point enters a decision.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .rational import format_fixed, format_rational


def _cubic(m: int, k: int) -> int:
    """``s**3 * p(m/s)`` with ``s = 2**k`` for the minimal polynomial ``p``."""
    m2 = m * m
    return m2 * m - (m2 << k) - (m << (2 * k)) - (1 << (3 * k))


def _coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else format_rational(c)


@functools.total_ordering
class CubicNumber:
    """An element ``c0 + c1*L + c2*L^2`` of Q(L)."""

    __slots__ = ("_n", "_d")

    def __init__(self, c0=0, c1=0, c2=0):
        cs = [Fraction(c) for c in (c0, c1, c2)]
        d = math.lcm(*(c.denominator for c in cs))
        self._n = tuple(c.numerator * (d // c.denominator) for c in cs)
        self._d = d

    @classmethod
    def _raw(cls, n0: int, n1: int, n2: int, d: int) -> "CubicNumber":
        if d != 1:
            if d < 0:
                n0, n1, n2, d = -n0, -n1, -n2, -d
            g = math.gcd(n0, n1, n2, d)
            if g != 1:
                n0, n1, n2, d = n0 // g, n1 // g, n2 // g, d // g
        obj = cls.__new__(cls)
        obj._n = (n0, n1, n2)
        obj._d = d
        return obj

    @classmethod
    def coerce(cls, value) -> "CubicNumber":
        if isinstance(value, CubicNumber):
            return value
        return cls(value)

    # -- coefficients -----------------------------------------------------
    @property
    def c0(self) -> Fraction:
        return Fraction(self._n[0], self._d)

    @property
    def c1(self) -> Fraction:
        return Fraction(self._n[1], self._d)

    @property
    def c2(self) -> Fraction:
        return Fraction(self._n[2], self._d)

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.c0, self.c1, self.c2

    def is_zero(self) -> bool:
        return self._n == (0, 0, 0)

    def is_rational(self) -> bool:
        return self._n[1] == 0 and self._n[2] == 0

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = CubicNumber.coerce(other)
        except TypeError:
            return NotImplemented
        (a0, a1, a2), da = self._n, self._d
        (b0, b1, b2), db = other._n, other._d
        if da == db:
            return CubicNumber._raw(a0 + b0, a1 + b1, a2 + b2, da)
        return CubicNumber._raw(a0 * db + b0 * da, a1 * db + b1 * da,
                                a2 * db + b2 * da, da * db)

    __radd__ = __add__

    def __neg__(self):
        n0, n1, n2 = self._n
        return CubicNumber._raw(-n0, -n1, -n2, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = CubicNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return CubicNumber.coerce(other) - self

    def __mul__(self, other):
        try:
            other = CubicNumber.coerce(other)
        except TypeError:
            return NotImplemented
        a0, a1, a2 = self._n
        b0, b1, b2 = other._n
        d0 = a0 * b0
        d1 = a0 * b1 + a1 * b0
        d2 = a0 * b2 + a1 * b1 + a2 * b0
        d3 = a1 * b2 + a2 * b1
        d4 = a2 * b2
        # L^3 = 1 + L + L^2, L^4 = 1 + 2L + 2L^2
        return CubicNumber._raw(d0 + d3 + d4, d1 + d3 + 2 * d4,
                                d2 + d3 + 2 * d4, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> "CubicNumber":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(λ)")
        # columns: coordinates of a, a*L, a*L^2 (numerators only)
        a0, a1, a2 = self._n
        b0, b1, b2 = a2, a0 + a2, a1 + a2
        c0, c1, c2 = b2, b0 + b2, b1 + b2
        cof0 = b1 * c2 - b2 * c1
        cof1 = -(a1 * c2 - a2 * c1)
        cof2 = a1 * b2 - a2 * b1
        det = a0 * cof0 + b0 * cof1 + c0 * cof2
        # the adjugate's first column solves M x = d e0 by Cramer's rule
        d = self._d
        return CubicNumber._raw(d * cof0, d * cof1, d * cof2, det)

    def __truediv__(self, other):
        try:
            other = CubicNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CubicNumber.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        result = ONE
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CubicNumber):
            try:
                other = CubicNumber(other)
            except TypeError:
                return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        return hash((self._n, self._d))

    def __lt__(self, other):
        try:
            other = CubicNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return sign(self - other) < 0

    def __float__(self):
        return float(enclose(self, 60).midpoint)

    # -- rendering --------------------------------------------------------
    def __str__(self):
        c0, c1, c2 = (_coef(c) for c in self.coefficients)
        return f"{c0} + {c1}*L + {c2}*L^2"

    def __repr__(self):
        c0, c1, c2 = (str(c) for c in self.coefficients)
        return f"CubicNumber({c0!r}, {c1!r}, {c2!r})"


ZERO = CubicNumber(0)
ONE = CubicNumber(1)
LAMBDA = CubicNumber(0, 1, 0)


@functools.lru_cache(maxsize=8192)
def lambda_power(k: int) -> CubicNumber:
    """``L**k`` for any integer ``k`` (cached)."""
    return LAMBDA**k


def inverse(a: CubicNumber) -> CubicNumber:
    return CubicNumber.coerce(a).inverse()


# ---------------------------------------------------------------------------
# enclosures


@dataclass(frozen=True)
class Enclosure:
    """A closed rational interval ``[lo, hi]`` certified to contain a real."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value) -> bool:
        if isinstance(value, Enclosure):
            return self.lo <= value.lo and value.hi <= self.hi
        return self.lo <= value <= self.hi

    def __add__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0


def _lambda_floor_bisect(k: int) -> int:
    """floor(L * 2**k) by plain bisection from the bracket [1, 2]."""
    lo, hi = 1 << k, 2 << k
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _cubic(mid, k) < 0:
            lo = mid
        else:
            hi = mid
    return lo


_best_floor = [64, _lambda_floor_bisect(64)]


def _lambda_floor(k: int) -> int:
    """floor(L * 2**k) by Newton steps with doubling precision.

    Every result is certified by the sign test ``p(m/s) < 0 < p((m+1)/s)``,
    so it is exactly what bisection would produce.
    """
    kb, mb = _best_floor
    if k <= kb:
        return mb >> (kb - k)
    if k > 2 * kb:
        # a floor accurate to about half the bits is enough for one step
        _lambda_floor(k // 2 + 16)
        kb, mb = _best_floor
    m = mb << (k - kb)
    s = 1 << k
    for _ in range(64):
        step = _cubic(m, k) // (3 * m * m - 2 * m * s - (s << k))
        m -= step
        if -2 <= step <= 2:
            break
    while _cubic(m, k) > 0:
        m -= 1
    while _cubic(m + 1, k) < 0:
        m += 1
    _best_floor[0], _best_floor[1] = k, m
    return m


def lambda_enclosure(precision_bits: int) -> Enclosure:
    """Dyadic interval of width ``2**-precision_bits`` around L.

    The interval is the one bisection of [1, 2] lands on after
    ``precision_bits`` halvings; for large requests it is found by Newton
    iteration and then certified with the same sign test.
    """
    if precision_bits < 1:
        raise ValueError("precision_bits must be >= 1")
    m = _lambda_floor(precision_bits)
    s = 1 << precision_bits
    return Enclosure(Fraction(m, s), Fraction(m + 1, s))


def _enclose_scaled(n: tuple[int, int, int], k: int) -> tuple[int, int]:
    """Integer bounds of ``s**2 * (n0 + n1 L + n2 L^2)`` with ``s = 2**k``."""
    n0, n1, n2 = n
    m = _lambda_floor(k)
    s = 1 << k
    base = n0 * s * s
    t1 = (n1 * m * s, n1 * (m + 1) * s)
    t2 = (n2 * m * m, n2 * (m + 1) * (m + 1))
    return base + min(t1) + min(t2), base + max(t1) + max(t2)


def enclose(a, precision_bits: int, lambda_bits: int | None = None) -> Enclosure:
    """Certified enclosure of the real value of ``a`` with width ``<= 2**-precision_bits``.

    ``lambda_bits`` forces the precision of the L enclosure used; it is
    raised automatically when too small for the requested width.
    """
    a = CubicNumber.coerce(a)
    grid = precision_bits + 2
    if a.is_rational():
        # rationals snap outward to the same grid as everything else, so
        # enclosures of sums stay inside sums of enclosures
        n, d = a._n[0] << grid, a._d
        return Enclosure(Fraction(n // d, 1 << grid), Fraction(-(-n // d), 1 << grid))
    n0, n1, n2 = a._n
    d = a._d
    spread = abs(n1) + 4 * abs(n2)
    k = precision_bits + 2 + max(0, spread.bit_length() - d.bit_length() + 1)
    if lambda_bits is not None:
        k = max(k, lambda_bits)
    while True:
        lo_s, hi_s = _enclose_scaled(a._n, k)
        denom = d << (2 * k)
        lo = (lo_s << grid) // denom
        hi = -((-hi_s << grid) // denom)
        if hi - lo <= 4:
            return Enclosure(Fraction(lo, 1 << grid), Fraction(hi, 1 << grid))
        k += 16


def _separation_bits(a: CubicNumber) -> int:
    """``k`` with ``|a| > 2**-k`` for nonzero ``a``.

    The numerator ``n0 + n1 L + n2 L^2`` is a nonzero algebraic integer, so
    its norm is at least 1 in absolute value; both complex conjugates of
    L have modulus below 1, which bounds the other two factors of the norm
    by ``M = |n0| + |n1| + |n2|``.  Hence ``|a| >= 1 / (d M^2)``.
    """
    m = sum(abs(c) for c in a._n)
    return a._d.bit_length() + 2 * m.bit_length() + 1


def sign(a) -> int:
    """Exact sign of ``a``: -1, 0 or 1."""
    a = CubicNumber.coerce(a)
    if a.is_zero():
        return 0
    if a.is_rational():
        return 1 if a.c0 > 0 else -1
    # a cheap try first; the separation bound settles every remaining case
    for bits in (32, _separation_bits(a) + 2):
        enc = enclose(a, bits)
        if enc.lo > 0:
            return 1
        if enc.hi < 0:
            return -1
    raise AssertionError("separation bound failed")  # pragma: no cover


def enclose_relative(a, significant_bits: int = 64) -> Enclosure:
    """Enclosure of nonzero ``a`` whose width is at most ``2**-significant_bits * |a|``."""
    a = CubicNumber.coerce(a)
    if a.is_rational():
        return Enclosure(a.c0, a.c0)
    enc = enclose(a, 32)
    if not enc.excludes_zero():
        enc = enclose(a, _separation_bits(a) + 2)
    while True:
        mag = enc.lo if enc.lo > 0 else -enc.hi
        if enc.width * (1 << significant_bits) <= mag:
            return enc
        lead = mag.denominator.bit_length() - mag.numerator.bit_length() + 1
        enc = enclose(a, max(lead, 0) + significant_bits + 2)


def to_decimal(a, digits: int = 12) -> str:
    """``a`` rounded to ``digits`` decimals; the last digit is correct."""
    a = CubicNumber.coerce(a)
    if a.is_rational():
        return format_fixed(a.c0, digits)
    scale = 10**digits
    bits = int(digits * 3.33) + 8
    while True:
        enc = enclose(a, bits)
        lo = (2 * enc.lo.numerator * scale + enc.lo.denominator) // (2 * enc.lo.denominator)
        hi = (2 * enc.hi.numerator * scale + enc.hi.denominator) // (2 * enc.hi.denominator)
        if lo == hi:
            return format_fixed(Fraction(lo, scale), digits)
        # irrational values never sit on a rounding boundary, so this ends
        bits += 32
