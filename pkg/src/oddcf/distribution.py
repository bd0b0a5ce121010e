"""Exact values of the limit distribution functions F and F0.

For ``x = [0; e1/a1, ..., el/al]`` (form zero)::

    F0(x) = -sum_i E_i * L**(-A_i),   E_i = prod_{j<=i} (-e_j),   A_i = a_1 + ... + a_i - 1

and F is the same series taken on the form-one expansion, subtracted from 1.
At rationals both sums are finite, so every value here is an exact element
of Q(L).  ``F0_numeric`` handles finite prefixes of infinite expansions.
"""

from __future__ import annotations

from fractions import Fraction

from .contfrac import (
    ONE_FORM,
    ZERO_FORM,
    OddCF,
    OrdinaryCF,
    eval_ordinary,
    expand_odd_one,
    expand_odd_zero,
    validate,
)
from .cubic import ONE, ZERO, CubicNumber, Enclosure, enclose, lambda_power
from .errors import DomainError


def series_terms(cf: OddCF) -> list[tuple[int, int]]:
    """The pairs ``(E_i, A_i)`` of an odd expansion."""
    out = []
    E, total = 1, 0
    for eps, a in cf.terms:
        E *= -eps
        total += a
        out.append((E, total - 1))
    return out


def _series(cf: OddCF) -> CubicNumber:
    """``sum_i E_i L**(-A_i)`` by Horner's rule on the gaps ``a_{i+1}``."""
    terms = cf.terms
    if not terms:
        return ZERO
    E = []
    acc = 1
    for eps, _ in terms:
        acc *= -eps
        E.append(acc)
    # v_i = E_i + L**(-a_{i+1}) v_{i+1}, then scale by L**(-A_1)
    v = CubicNumber(E[-1])
    for i in range(len(terms) - 2, -1, -1):
        v = E[i] + lambda_power(-terms[i + 1][1]) * v
    return lambda_power(1 - terms[0][1]) * v


def F0_of(cf: OddCF) -> CubicNumber:
    """F0 evaluated on a form-zero expansion."""
    if cf.form != ZERO_FORM:
        raise DomainError("F0_of expects a form-zero expansion")
    return -_series(cf)


def F_of(cf: OddCF) -> CubicNumber:
    """F evaluated on a form-one expansion."""
    if cf.form != ONE_FORM:
        raise DomainError("F_of expects a form-one expansion")
    return ONE - _series(cf)


def F0_exact(x) -> CubicNumber:
    """F0(x) for rational ``x`` in ``[0, 1]``."""
    return F0_of(expand_odd_zero(x))


def F_exact(x) -> CubicNumber:
    """F(x) for rational ``x`` in ``[0, 1]``."""
    return F_of(expand_odd_one(x))


# -- from ordinary partial quotients ----------------------------------------


def _inv(k: int) -> CubicNumber:
    return lambda_power(-k)


_ONE_PLUS = ONE + lambda_power(-1)  # 1 + 1/L


def _ordinary_values(terms: tuple[int, ...], mode: str) -> CubicNumber:
    """F0 (``mode='g'``) or F (``mode='h'``) of ``[0; b1, b2, ...]``.

    Each step peels one quotient ``b`` (two when ``b = 1`` under F) and
    writes the value as ``c + m * value(rest)``; the parity of ``b`` decides
    whether the rest is read under F0 or F.  The affine maps are composed
    left to right.
    """
    const, mult = ZERO, ONE
    rest = tuple(terms)
    while rest:
        b, tail = rest[0], rest[1:]
        if mode == "g":
            if b % 2:
                c, m, mode = _inv(b - 1), -_inv(b), "g"
            else:
                c, m, mode = _inv(b) * _ONE_PLUS, -_inv(b + 1), "h"
            rest = tail
        elif b >= 2:
            if b % 2 == 0:
                c, m, mode = _inv(b - 1), -_inv(b), "g"
            else:
                c, m, mode = _inv(b) * _ONE_PLUS, -_inv(b + 1), "h"
            rest = tail
        elif not tail:
            c, m = ONE, ZERO
            rest = ()
        else:
            b2, rest = tail[0], tail[1:]
            if b2 % 2 == 0:
                c, m, mode = ONE - _inv(b2), _inv(b2 + 1), "g"
            else:
                c, m, mode = ONE - _inv(b2 + 1) * _ONE_PLUS, _inv(b2 + 2), "h"
        const = const + mult * c
        mult = mult * m
        if mult.is_zero():
            break
    return const


def _ordinary_unit(cf: OrdinaryCF) -> tuple[int, ...]:
    """Quotients ``b1, ...`` of a value in ``[0, 1]`` written with ``b0 = 0``."""
    value = eval_ordinary(cf)
    if not 0 <= value <= 1:
        raise DomainError(f"value {value} is outside [0, 1]")
    if value == 1:
        return (1,)
    cf = cf.canonical()
    if cf.b0 != 0:
        raise DomainError("expected b0 = 0")
    return cf.terms


def F_from_ordinary(cf: OrdinaryCF) -> CubicNumber:
    """F(x) read off the regular partial quotients of ``x``.

    Even quotients ``b`` contribute ``L**-b (1 + 1/L)`` and flip the rest to
    the F0 side, matching how the odd expansion absorbs them.
    """
    return _ordinary_values(_ordinary_unit(cf), "h")


def F0_from_ordinary(cf: OrdinaryCF) -> CubicNumber:
    """F0(x) read off the regular partial quotients of ``x``."""
    return _ordinary_values(_ordinary_unit(cf), "g")


def alternating_closed_sum(cf: OrdinaryCF) -> CubicNumber:
    """``1 - sum (-1)**(i+1) c_i L**(1 - S_i)`` with ``c_i = 1 + 1/L`` for even ``b_i``.

    Kept as a reference only: when every quotient is odd this closed sum
    equals ``1 - F0(x)``, and it differs from ``F`` in general (``[0; 3]`` gives
    ``1 - L**-2`` while ``F(1/3) = L**-1 - L**-2``).
    """
    total = ZERO
    S = 0
    for i, b in enumerate(_ordinary_unit(cf), 1):
        S += b + (1 if b % 2 == 0 else 0)
        c = _ONE_PLUS if b % 2 == 0 else ONE
        term = c * _inv(S - 1)
        total = total + term if i % 2 else total - term
    return ONE - total


# -- truncated expansions ------------------------------------------------


def F0_numeric(prefix: OddCF, precision_bits: int = 64, complete: bool = False) -> Enclosure:
    """Enclosure of F0 over every number whose expansion starts with ``prefix``.

    The unseen tail has exponents ``A_i >= A_k + 1`` and signs of either kind,
    so it is bounded by ``L**-A_k / (L - 1)``.  With ``complete=True`` the
    prefix is the whole expansion and the result is a tight enclosure of
    the exact value.
    """
    if prefix.form != ZERO_FORM:
        raise DomainError("F0_numeric expects a form-zero prefix")
    bad = validate(prefix, prefix=not complete)
    if bad is not None:
        raise DomainError(f"invalid prefix: {bad.message}")
    if complete:
        return enclose(F0_of(prefix), precision_bits)
    if not prefix.terms:
        return Enclosure(Fraction(0), Fraction(1))
    A_k = sum(prefix.quotients) - 1
    partial = enclose(F0_of(prefix), precision_bits + 1)
    tail = enclose(lambda_power(-A_k) / (lambda_power(1) - 1), precision_bits + 1)
    lo = max(Fraction(0), partial.lo - tail.hi)
    hi = min(Fraction(1), partial.hi + tail.hi)
    return Enclosure(lo, hi)


# -- identities ------------------------------------------------------------


def check_functional_eq_F0(x, n: int) -> tuple[bool, bool]:
    """Both shift identities for F0 at ``(x, n)``, checked exactly.

    ``F0(x) L**(1-2n) == L**(2-2n) - F0(1/(2n-1+x))`` and
    ``F0(x) L**(-2n) == F0(1/(2n+1/x))``.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    if n < 1:
        raise DomainError("n must be >= 1")
    f = F0_exact(x)
    first = f * _inv(2 * n - 1) == _inv(2 * n - 2) - F0_exact(1 / (2 * n - 1 + x))
    # 1/(2n + 1/x) = x/(2nx + 1) also covers x = 0
    second = f * _inv(2 * n) == F0_exact(x / (2 * n * x + 1))
    return first, second


def check_functional_eq_F(x, n: int) -> tuple[bool, bool]:
    """The two shift identities for F, exactly as written with ``1 - F(1 - x)``.

    ``(1 - F(1-x)) L**(1-2n) == L**(2-2n) - 1 + F(1 - 1/(2n-1+x))`` and
    ``(1 - F(1-x)) L**(-2n) == 1 - F(1 - 1/(2n+1/x))``.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    if n < 1:
        raise DomainError("n must be >= 1")
    g = ONE - F_exact(1 - x)
    first = g * _inv(2 * n - 1) == _inv(2 * n - 2) - ONE + F_exact(1 - 1 / (2 * n - 1 + x))
    second = g * _inv(2 * n) == ONE - F_exact(1 - x / (2 * n * x + 1))
    return first, second


def reflection(x) -> bool:
    """``F(x) == 1 - F0(1 - x)`` exactly."""
    x = Fraction(x)
    return F_exact(x) == ONE - F0_exact(1 - x)
