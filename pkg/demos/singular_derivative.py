"""Difference quotients of F shrinking to zero at rational points.

F is strictly increasing yet its derivative vanishes at every rational.
The symmetric quotients below are exact elements of Q(L), printed through
certified enclosures.  Run with ``python3 demos/singular_derivative.py``.
"""

from __future__ import annotations

from fractions import Fraction

from oddcf.empirical import convergence_table, derivative_probe, max_errors
from oddcf.rational import format_scientific
from oddcf.tree import d_levels

for x in (Fraction(1, 3), Fraction(2, 5), Fraction(5, 8)):
    print(f"x = {x}")
    for row in derivative_probe(x):
        print(f"  h = {row.h}:  {format_scientific(row.enclosure.lo, 6)}")

grid = [x for xs in d_levels(8) for x in xs]
errs = max_errors(convergence_table(16, grid))
print("\nlargest |F0_n - F0| over the level-8 grid")
for n in range(4, 17, 2):
    print(f"  n = {n:2d}: {float(errs[n]):.3e}")
