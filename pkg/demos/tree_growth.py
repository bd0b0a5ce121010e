"""Level sets of the re-leveled Stern–Brocot tree and how fast they grow.

Run with ``python3 demos/tree_growth.py``.
"""

from __future__ import annotations

from oddcf.rational import format_rational
from oddcf.tree import d_levels, ratio_report, x_sequence, y_sequence, z_sequence

for n, xs in enumerate(d_levels(5), 1):
    print(f"X_{n}: " + " ".join(format_rational(x) for x in xs))

xs, ys, zs = x_sequence(12), y_sequence(12), z_sequence(12)
print("\n n    X_n    Y_n    Z_n")
for n in range(1, 13):
    print(f"{n:2d} {xs[n]:6d} {ys[n]:6d} {zs[n]:6d}")

print()
for n in (10, 20, 30):
    for row in ratio_report(n):
        print(f"{row.name:>10}  {float(row.value):.12f}  distance to limit <= {float(row.distance.hi):.2e}")
