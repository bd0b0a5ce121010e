"""Empirical distribution functions, convergence tables and singularity probes.

``empirical_F0(n, x)`` is the share of ``Y_n`` (rationals in (0, 1) with
``S0 <= n + 1``) lying at or below ``x``.  ``empirical_F`` does the same on
``M_n``, realized as ``{1 - xi : xi in Y_{n-1}}`` together with the point 1.
Both count ``x`` itself when it belongs to the set.
"""

from __future__ import annotations

import bisect
import csv
import io
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .contfrac import OddCF, ZERO_FORM, expand_odd_one, expand_odd_zero
from .cubic import LAMBDA, ONE, CubicNumber, Enclosure, enclose, enclose_relative
from .distribution import F0_exact, F_exact
from .errors import DomainError
from .rational import format_fixed, format_rational, format_scientific, mediant
from .tree import DEFAULT_BUDGET, FIRST, SECOND, d_levels, stern_brocot_level, subtree_count, y_sequence


class LevelIndex:
    """Sorted level sets ``X_1..X_N`` for repeated counting queries."""

    def __init__(self, max_level: int, budget: int = DEFAULT_BUDGET):
        self.max_level = max_level
        self.levels = d_levels(max_level, budget) if max_level >= 1 else []
        self.sizes = [0]
        for xs in self.levels:
            self.sizes.append(self.sizes[-1] + len(xs))

    def _check(self, n: int) -> None:
        if not 0 <= n <= self.max_level:
            raise DomainError(f"level {n} is outside 0..{self.max_level}")

    def size(self, n: int) -> int:
        """``Y_n``."""
        self._check(n)
        return self.sizes[n]

    def count_le(self, n: int, x) -> int:
        """``#{xi in Y_n : xi <= x}``."""
        self._check(n)
        return sum(bisect.bisect_right(xs, x) for xs in self.levels[:n])

    def count_lt(self, n: int, x) -> int:
        self._check(n)
        return sum(bisect.bisect_left(xs, x) for xs in self.levels[:n])

    def contains(self, n: int, x) -> bool:
        return self.count_le(n, x) != self.count_lt(n, x)

    def F0(self, n: int, x) -> Fraction:
        x = Fraction(x)
        if n < 1:
            raise DomainError("n must be >= 1")
        return Fraction(self.count_le(n, x), self.size(n))

    def F(self, n: int, x) -> Fraction:
        x = Fraction(x)
        if n < 1:
            raise DomainError("n must be >= 1")
        m = n - 1
        # 1 - xi <= x  <=>  xi >= 1 - x
        below = self.size(m) - self.count_lt(m, 1 - x)
        return Fraction(below + (1 if x >= 1 else 0), self.size(m) + 1)


_index_cache: dict[int, LevelIndex] = {}


def level_index(max_level: int) -> LevelIndex:
    """A shared index covering at least ``max_level`` levels."""
    for k, idx in _index_cache.items():
        if k >= max_level:
            return idx
    idx = LevelIndex(max_level)
    _index_cache.clear()
    _index_cache[max_level] = idx
    return idx


def empirical_F0(n: int, x) -> Fraction:
    """``#{xi in Y_n : xi <= x} / Y_n``."""
    return level_index(n).F0(n, x)


def empirical_F(n: int, x) -> Fraction:
    """``#{xi in M_n : xi <= x} / |M_n|`` with ``|M_n| = Y_{n-1} + 1``."""
    return level_index(max(n - 1, 1)).F(n, x)


def subtree_ratio(n: int, a1: int) -> Fraction:
    """``D^(xi)_n / Y_n`` for ``xi = [0; 1/a1, 1/1]``, the subtree hanging left of ``1/a1``."""
    if a1 < 1 or a1 % 2 == 0:
        raise DomainError("a1 must be an odd positive integer")
    xi = OddCF(ZERO_FORM, ((1, a1), (1, 1)))
    return Fraction(subtree_count(xi, n), y_sequence(n)[n])


# -- convergence -----------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    x: Fraction
    empirical: Fraction
    exact_enclosure: Enclosure
    abs_error_bound: Fraction


def convergence_table(max_n: int, grid: Sequence, precision_bits: int = 64,
                      min_n: int = 1) -> list[ConvergenceRow]:
    """Rows ``(n, x)`` for ``min_n <= n <= max_n`` and every grid point, n-major."""
    grid = [Fraction(x) for x in grid]
    index = level_index(max_n)
    exact = {x: enclose(F0_exact(x), precision_bits) for x in grid}
    rows = []
    for n in range(min_n, max_n + 1):
        for x in grid:
            emp = index.F0(n, x)
            enc = exact[x]
            bound = max(abs(emp - enc.lo), abs(emp - enc.hi))
            rows.append(ConvergenceRow(n, x, emp, enc, bound))
    return rows


def max_errors(rows: Iterable[ConvergenceRow]) -> dict[int, Fraction]:
    """Largest error bound per ``n``."""
    out: dict[int, Fraction] = {}
    for r in rows:
        if r.n not in out or r.abs_error_bound > out[r.n]:
            out[r.n] = r.abs_error_bound
    return out


# -- mediant ratios --------------------------------------------------------

_L = LAMBDA
RATIO_CLASSES = {
    "L-1": _L - 1,
    "1/(L-1)": ONE / (_L - 1),
    "L": _L,
    "1/L": ONE / _L,
}
SHARE_VALUES = {
    "L/(L+1)": _L / (_L + 1),
    "1/(L+1)": ONE / (_L + 1),
    "(L-1)/L": (_L - 1) / _L,
    "1/L": ONE / _L,
}
FIRST_TYPE_CLASSES = frozenset({"L-1", "1/(L-1)"})


@dataclass(frozen=True)
class RatioRow:
    level: int
    x: Fraction
    y: Fraction
    mediant: Fraction
    ratio: CubicNumber
    ratio_class: str | None
    share_left: CubicNumber
    share_right: CubicNumber
    share_class: str | None
    node_type: str
    tree_type: str

    @property
    def consistent(self) -> bool:
        """Class is in the set and its branch matches the node type."""
        if self.ratio_class is None or self.share_class is None:
            return False
        return (self.ratio_class in FIRST_TYPE_CLASSES) == (self.node_type == FIRST)


def _lookup(value: CubicNumber, table: dict[str, CubicNumber]) -> str | None:
    for name, v in table.items():
        if v == value:
            return name
    return None


def _type_of(rep: OddCF) -> str:
    return FIRST if rep.terms[-1][1] == 1 else SECOND


def mediant_ratio_audit(level_n: int, func=None) -> list[RatioRow]:
    """Exact ratio classes for consecutive pairs of the Stern–Brocot sequence ``F_level_n``.

    ``node_type`` is the type of ``x (+) y`` read from its form-one
    expansion, the one F is built on; ``tree_type`` is its type in the
    form-zero tree.  By the reflection ``F(x) = 1 - F0(1 - x)`` the two
    agree with each other on ``m`` and ``1 - m``.
    """
    f = func or F_exact
    cache: dict[Fraction, CubicNumber] = {}

    def val(t: Fraction) -> CubicNumber:
        if t not in cache:
            cache[t] = f(t)
        return cache[t]

    seq = stern_brocot_level(level_n)
    rows = []
    for x, y in zip(seq, seq[1:]):
        m = mediant(x, y)
        left = val(m) - val(x)
        right = val(y) - val(m)
        whole = val(y) - val(x)
        ratio = left / right
        share_l, share_r = left / whole, right / whole
        node_type = _type_of(expand_odd_one(m))
        tree_type = _type_of(expand_odd_zero(m))
        rows.append(RatioRow(level_n, x, y, m, ratio, _lookup(ratio, RATIO_CLASSES),
                             share_l, share_r, _lookup(share_l, SHARE_VALUES),
                             node_type, tree_type))
    return rows


# -- difference quotients --------------------------------------------------

DEFAULT_STEPS = tuple(Fraction(1, 10**k) for k in range(1, 7))


@dataclass(frozen=True)
class ProbeRow:
    x: Fraction
    h: Fraction
    quotient: CubicNumber
    enclosure: Enclosure


def derivative_probe(x, steps: Sequence | None = None, significant_bits: int = 48,
                     func=None) -> list[ProbeRow]:
    """Symmetric difference quotients ``(F(x+h) - F(x-h)) / (2h)``.

    Without ``steps`` the powers ``10**-k``, ``k = 1..6``, that fit inside
    ``[0, 1]`` around ``x`` are used; explicit steps must all fit.
    """
    x = Fraction(x)
    if not 0 < x < 1:
        raise DomainError(f"probe point {x} must lie in (0, 1)")
    room = min(x, 1 - x)
    if steps is None:
        steps = [h for h in DEFAULT_STEPS if h <= room]
    steps = [Fraction(h) for h in steps]
    for h in steps:
        if h <= 0:
            raise DomainError(f"step {h} must be positive")
        if h > room:
            raise DomainError(f"step {h} exceeds min(x, 1 - x) = {room}")
    f = func or F_exact
    rows = []
    for h in steps:
        q = (f(x + h) - f(x - h)) / (2 * h)
        rows.append(ProbeRow(x, h, q, enclose_relative(q, significant_bits)))
    return rows


def random_rationals(count: int, seed: int, max_den: int = 12) -> list[Fraction]:
    """Distinct reduced rationals in (0, 1) with denominators up to ``max_den``."""
    rng = random.Random(seed)
    pool = sorted({Fraction(p, q) for q in range(2, max_den + 1) for p in range(1, q)})
    if count > len(pool):
        raise DomainError(f"only {len(pool)} rationals with denominator <= {max_den}")
    return sorted(rng.sample(pool, count))


def decreasing_below(rows: Sequence[ProbeRow], threshold) -> bool:
    """Certified strict decrease of the quotients over steps ``h <= threshold``."""
    tail = sorted((r for r in rows if r.h <= threshold), key=lambda r: -r.h)
    return all(b.enclosure.hi < a.enclosure.lo for a, b in zip(tail, tail[1:]))


# -- CSV -------------------------------------------------------------------

CONVERGENCE_HEADER = ("n", "x", "empirical", "exact_lo", "exact_hi", "abs_error_bound")
RATIO_HEADER = ("level", "x", "y", "mediant", "ratio_class", "node_type")
PROBE_HEADER = ("x", "h", "quotient_lo", "quotient_hi")


def convergence_records(rows: Iterable[ConvergenceRow], digits: int = 12) -> list[tuple]:
    return [(r.n, format_rational(r.x), format_fixed(r.empirical, digits),
             format_fixed(r.exact_enclosure.lo, digits, "down"),
             format_fixed(r.exact_enclosure.hi, digits, "up"),
             format_fixed(r.abs_error_bound, digits, "up")) for r in rows]


def ratio_records(rows: Iterable[RatioRow]) -> list[tuple]:
    return [(r.level, format_rational(r.x), format_rational(r.y), format_rational(r.mediant),
             r.ratio_class or "none", r.node_type) for r in rows]


def probe_records(rows: Iterable[ProbeRow], digits: int = 12) -> list[tuple]:
    return [(format_rational(r.x), format_rational(r.h),
             format_scientific(r.enclosure.lo, digits, "down"),
             format_scientific(r.enclosure.hi, digits, "up")) for r in rows]


def export_csv(header: Sequence[str], records: Iterable[Sequence], destination=None) -> str:
    """Write rows under ``header``; returns the text and writes it when given a path."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(records)
    text = buf.getvalue()
    if destination is not None:
        Path(destination).write_text(text)
    return text
