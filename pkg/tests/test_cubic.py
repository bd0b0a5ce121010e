from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from oddcf.cubic import (
    LAMBDA,
    ONE,
    ZERO,
    CubicNumber,
    Enclosure,
    _lambda_floor,
    _lambda_floor_bisect,
    enclose,
    enclose_relative,
    lambda_enclosure,
    lambda_power,
    sign,
    to_decimal,
)

mpmath.mp.dps = 80
# independent oracle: the real root of t^3 - t^2 - t - 1 from mpmath
L_MP = mpmath.findroot(lambda t: t**3 - t**2 - t - 1, 1.8)

coef = st.fractions(min_value=-50, max_value=50, max_denominator=50)
cubics = st.builds(CubicNumber, coef, coef, coef)
nonzero = cubics.filter(lambda a: not a.is_zero())


def real(a: CubicNumber):
    return sum(mpmath.mpf(c.numerator) / c.denominator * L_MP**i for i, c in enumerate(a.coefficients))


def test_lambda_is_a_root():
    assert LAMBDA**3 == LAMBDA**2 + LAMBDA + 1
    assert lambda_power(-1) * LAMBDA == ONE


def test_lambda_enclosure_contains_reference():
    enc = lambda_enclosure(40)
    assert enc.width <= Fraction(1, 2**40)
    assert Fraction("1.839286755214161") in enc
    assert enc.lo <= Fraction(str(L_MP)[:70]) <= enc.hi


@pytest.mark.parametrize("k", [1, 2, 10, 63, 64, 65, 100, 129, 200, 257, 1000])
def test_newton_floor_equals_bisection(k):
    assert _lambda_floor(k) == _lambda_floor_bisect(k)


@given(cubics, cubics, cubics)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@given(nonzero)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert ONE / a == a.inverse()


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(cubics)
def test_value_matches_oracle(a):
    enc = enclose(a, 80)
    x = real(a)
    assert mpmath.mpf(enc.lo.numerator) / enc.lo.denominator - mpmath.mpf(10) ** -70 <= x
    assert x <= mpmath.mpf(enc.hi.numerator) / enc.hi.denominator + mpmath.mpf(10) ** -70
    assert enc.width <= Fraction(1, 2**80)


@given(cubics)
def test_sign_matches_oracle(a):
    x = real(a)
    want = 0 if a.is_zero() else (1 if x > 0 else -1)
    assert sign(a) == want


def test_sign_of_tiny_element():
    tiny = lambda_power(-120)
    assert sign(tiny) == 1 and sign(-tiny) == -1
    # difference of two close elements of Q(L)
    assert sign(lambda_power(-60) - lambda_power(-61) - lambda_power(-62) - lambda_power(-63)) == 0


@given(cubics, cubics)
def test_enclosure_addition(a, b):
    assert enclose(a + b, 40) in enclose(a, 40) + enclose(b, 40)


@given(cubics, cubics)
def test_ordering_consistent(a, b):
    assert (a < b) == (sign(a - b) < 0)
    assert (a == b) == (sign(a - b) == 0)


@given(nonzero)
def test_relative_enclosure(a):
    enc = enclose_relative(a, 30)
    assert enc.excludes_zero() or enc.width == 0
    mag = min(abs(enc.lo), abs(enc.hi))
    assert enc.width * 2**30 <= mag or enc.width == 0


def test_to_decimal():
    assert to_decimal(ONE / LAMBDA, 10) == "0.5436890127"
    assert to_decimal(LAMBDA, 15) == "1.839286755214161"
    assert to_decimal(CubicNumber(Fraction(1, 3)), 3) == "0.333"


def test_rendering():
    assert str(ONE / LAMBDA) == "-1 + -1*L + 1*L^2"
    assert str(CubicNumber(Fraction(1, 2), 0, -3)) == "1/2 + 0*L + -3*L^2"


def test_enclosure_rejects_empty():
    with pytest.raises(ValueError):
        Enclosure(Fraction(1), Fraction(0))
