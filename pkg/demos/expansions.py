"""Odd expansions, the two distribution functions and the ordinary-quotient route.

Run with ``python3 demos/expansions.py``.
"""

from __future__ import annotations

from fractions import Fraction

from oddcf import (
    F0_exact,
    F_exact,
    F_from_ordinary,
    convert_ordinary_to_odd,
    expand_odd_one,
    expand_odd_zero,
    expand_ordinary,
    format_cf,
    to_decimal,
)

for x in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(3, 5), Fraction(5, 8)):
    ordinary = expand_ordinary(x)
    print(f"x = {x}")
    print(f"  ordinary      {format_cf(ordinary)}")
    print(f"  odd, lead 0   {format_cf(expand_odd_zero(x))}")
    print(f"  odd, lead 1   {format_cf(expand_odd_one(x))}")
    print(f"  converted     {format_cf(convert_ordinary_to_odd(ordinary))}")
    f, f0 = F_exact(x), F0_exact(x)
    print(f"  F(x)  = {f}  ~ {to_decimal(f, 10)}")
    print(f"  F0(x) = {f0}  ~ {to_decimal(f0, 10)}")
    assert F_from_ordinary(ordinary) == f
