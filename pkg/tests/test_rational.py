from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from oddcf.errors import ParseError
from oddcf.rational import (
    Ordering,
    compare,
    format_fixed,
    format_rational,
    format_scientific,
    mediant,
    parse_rational,
    rational,
)

fractions = st.fractions(max_denominator=10**6)


@given(st.integers(-10**9, 10**9), st.integers(1, 10**9))
def test_canonical_form(p, q):
    x = rational(p, q)
    assert x.denominator > 0
    assert gcd(x.numerator, x.denominator) == 1
    assert x.numerator * q == p * x.denominator


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        rational(1, 0)
    with pytest.raises(ParseError):
        parse_rational("3/0")


@given(fractions, fractions)
def test_mediant_lies_between(a, b):
    m = mediant(a, b)
    assert min(a, b) <= m <= max(a, b)
    assert m == Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


@given(fractions, fractions)
def test_compare_matches_subtraction(a, b):
    d = a - b
    want = Ordering.LESS if d < 0 else Ordering.GREATER if d > 0 else Ordering.EQUAL
    assert compare(a, b) is want


@given(fractions)
def test_text_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


@pytest.mark.parametrize("text,value", [("2/5", Fraction(2, 5)), (" 7 ", Fraction(7)),
                                        ("-3/6", Fraction(-1, 2)), ("4 / 8", Fraction(1, 2))])
def test_parse_examples(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1/", "/2", "a", "1/2/3", "1.5", "--1"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_fixed_rendering():
    assert format_fixed(Fraction(1, 3), 4) == "0.3333"
    assert format_fixed(Fraction(2, 3), 4) == "0.6667"
    assert format_fixed(Fraction(2, 3), 4, "down") == "0.6666"
    assert format_fixed(Fraction(1, 3), 4, "up") == "0.3334"
    assert format_fixed(Fraction(-1, 8), 2, "down") == "-0.13"
    assert format_fixed(Fraction(5), 0) == "5"


def _sci(text: str) -> Fraction:
    mant, exp = text.split("e")
    return Fraction(mant) * Fraction(10) ** int(exp)


@given(st.fractions(min_value=Fraction(1, 10**50), max_value=10**50), st.integers(1, 15))
def test_scientific_brackets_value(x, sig):
    lo = _sci(format_scientific(x, sig, "down"))
    hi = _sci(format_scientific(x, sig, "up"))
    assert lo <= x <= hi
    assert hi - lo <= x * Fraction(10) ** (2 - sig)


def test_scientific_tiny():
    assert format_scientific(Fraction(1, 10**200), 3) == "1.00e-200"
