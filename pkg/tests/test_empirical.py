from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from oddcf.contfrac import ZERO_FORM, OddCF
from oddcf.cubic import ONE
from oddcf.distribution import F0_exact, F_exact
from oddcf.empirical import (
    CONVERGENCE_HEADER,
    PROBE_HEADER,
    RATIO_HEADER,
    LevelIndex,
    convergence_table,
    decreasing_below,
    derivative_probe,
    empirical_F,
    empirical_F0,
    export_csv,
    max_errors,
    mediant_ratio_audit,
    probe_records,
    random_rationals,
    ratio_records,
    subtree_ratio,
)
from oddcf.errors import DomainError
from oddcf.tree import FIRST, d_levels, subtree_count, y_sequence

GOLDEN = Path(__file__).parent / "golden"
unit = st.fractions(min_value=0, max_value=1, max_denominator=200)


@pytest.fixture(scope="module")
def index():
    return LevelIndex(12)


def test_small_values():
    # Y_2 = {1/3, 1/2, 2/3}
    assert empirical_F0(2, Fraction(1, 2)) == Fraction(2, 3)
    assert empirical_F0(2, Fraction(2, 5)) == Fraction(1, 3)
    assert empirical_F0(2, 1) == 1 and empirical_F0(2, 0) == 0
    # Y_4: 1/2, 1/3, 1/4, 1/5, 2/7, 2/5 lie at or below 1/2
    assert empirical_F0(4, Fraction(1, 2)) == Fraction(6, 12)
    assert empirical_F0(4, Fraction(1, 3)) == Fraction(4, 12)


def test_reflected_value_with_tie():
    # M_5 has 13 points; 1/2 = 1 - 1/2 is one of them and is counted
    assert 1 - empirical_F0(4, Fraction(1, 2)) == Fraction(1, 2)
    assert empirical_F(5, Fraction(1, 2)) == Fraction(7, 13)


@given(unit, st.integers(1, 12))
def test_counting(x, n):
    members = [y for xs in d_levels(n) for y in xs]
    assert empirical_F0(n, x) == Fraction(sum(y <= x for y in members), len(members))


@given(unit, st.integers(2, 12))
def test_reflected_set(x, n):
    points = [1 - y for xs in d_levels(n - 1) for y in xs] + [Fraction(1)]
    assert empirical_F(n, x) == Fraction(sum(p <= x for p in points), len(points))


def test_level_index_bounds(index):
    with pytest.raises(DomainError):
        index.count_le(13, Fraction(1, 2))
    assert index.contains(3, Fraction(3, 5)) and not index.contains(2, Fraction(3, 5))


def test_subtree_ratio_ties(index):
    """The count below 1/a1 is the subtree count, plus one when 1/a1 itself is counted."""
    for a1 in (1, 3, 5, 7):
        xi = OddCF(ZERO_FORM, ((1, a1), (1, 1)))
        for n in range(1, 13):
            tie = int(a1 > 1 and index.contains(n, Fraction(1, a1)))
            assert index.count_le(n, Fraction(1, a1)) == subtree_count(xi, n) + tie
            assert subtree_ratio(n, a1) == Fraction(subtree_count(xi, n), y_sequence(n)[n])


def test_subtree_ratio_domain():
    with pytest.raises(DomainError):
        subtree_ratio(5, 2)


def test_convergence_against_golden():
    golden = json.loads((GOLDEN / "convergence_max_errors.json").read_text())
    grid = [x for xs in d_levels(golden["grid_level"]) for x in xs]
    errs = max_errors(convergence_table(20, grid, golden["precision_bits"]))
    assert {str(n): str(v) for n, v in errs.items()} == golden["max_abs_error_bound"]


def test_convergence_rows_bound_the_error():
    grid = [Fraction(1, 3), Fraction(1, 2), Fraction(5, 8)]
    for row in convergence_table(6, grid):
        assert row.exact_enclosure.lo <= row.exact_enclosure.hi
        assert abs(row.empirical - row.exact_enclosure.midpoint) <= row.abs_error_bound


def test_ratio_audit_levels():
    rows = [r for level in range(8) for r in mediant_ratio_audit(level)]
    assert len(rows) == 2**8 - 1
    assert all(r.consistent for r in rows)
    assert all(r.share_left + r.share_right == ONE for r in rows)


def test_ratio_audit_first_row():
    (row,) = mediant_ratio_audit(0)
    assert row.mediant == Fraction(1, 2)
    assert row.ratio == (F_exact(Fraction(1, 2)) - F_exact(0)) / (F_exact(1) - F_exact(Fraction(1, 2)))
    assert row.ratio_class == "1/(L-1)" and row.node_type == FIRST


def test_ratio_audit_with_F0():
    rows = mediant_ratio_audit(5, func=F0_exact)
    assert all(r.ratio_class is not None for r in rows)


def test_probe_against_golden():
    text = (GOLDEN / "derivative_probe.csv").read_text()
    rows = [r for x in random_rationals(25, 20240521) for r in derivative_probe(x)]
    assert export_csv(PROBE_HEADER, probe_records(rows)) == text


def test_probe_shape():
    rows = derivative_probe(Fraction(1, 3))
    assert [r.h for r in rows] == [Fraction(1, 10**k) for k in range(1, 7)]
    assert decreasing_below(rows, Fraction(1, 1000))
    assert rows[-1].enclosure.hi < Fraction(1, 10)
    for r in rows:
        exact = (F_exact(r.x + r.h) - F_exact(r.x - r.h)) / (2 * r.h)
        assert exact == r.quotient


def test_probe_domain():
    with pytest.raises(DomainError):
        derivative_probe(Fraction(1, 3), [Fraction(1, 2)])
    with pytest.raises(DomainError):
        derivative_probe(0)


def test_random_rationals_deterministic():
    a = random_rationals(25, 7)
    assert a == random_rationals(25, 7) and len(set(a)) == 25
    assert all(0 < x < 1 and x.denominator <= 12 for x in a)


def test_csv_export(tmp_path):
    rows = mediant_ratio_audit(1)
    dest = tmp_path / "audit.csv"
    text = export_csv(RATIO_HEADER, ratio_records(rows), dest)
    assert dest.read_text() == text
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0] == list(RATIO_HEADER)
    assert parsed[1] == ["1", "0/1", "1/2", "1/3", "L-1", "first"]
    assert len(CONVERGENCE_HEADER) == 6
