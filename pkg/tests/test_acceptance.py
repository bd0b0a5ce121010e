"""Acceptance criteria, one test each; a pass/fail line per criterion is printed at the end."""

from __future__ import annotations

import json
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import ACCEPTANCE, reduced
from oddcf.contfrac import ZERO_FORM, OddCF, convert_ordinary_to_odd, expand_odd_zero, expand_ordinary
from oddcf.cubic import ONE, lambda_enclosure
from oddcf.distribution import (
    F0_exact,
    F_exact,
    F_from_ordinary,
    check_functional_eq_F,
    check_functional_eq_F0,
)
from oddcf.empirical import (
    FIRST_TYPE_CLASSES,
    LevelIndex,
    PROBE_HEADER,
    convergence_table,
    decreasing_below,
    derivative_probe,
    export_csv,
    max_errors,
    mediant_ratio_audit,
    probe_records,
    random_rationals,
    subtree_ratio,
)
from oddcf.tree import (
    FIRST,
    d_levels,
    phi,
    phi_inverse,
    ratio_report,
    subtree_count,
    subtree_nodes,
    x_sequence,
    y_sequence,
    z_sequence,
)

F = Fraction
GOLDEN = Path(__file__).parent / "golden"
SEED = 20240521


@pytest.fixture(scope="module")
def levels():
    return d_levels(20)


def record(key: str, ok: bool, detail: str, started: float) -> None:
    ACCEPTANCE[key] = f"{'PASS' if ok else 'FAIL'} criterion {key}: {detail} ({time.perf_counter() - started:.2f}s)"
    assert ok, detail


def test_criterion_01_level_sets_and_examples():
    t = time.perf_counter()
    want_levels = [
        [F(1, 2)],
        [F(1, 3), F(2, 3)],
        [F(1, 4), F(3, 5), F(3, 4)],
        [F(1, 5), F(2, 7), F(2, 5), F(4, 7), F(5, 8), F(4, 5)],
    ]
    examples = {
        F(1, 2): ((1, 1), (1, 1)),
        F(3, 5): ((1, 1), (1, 1), (1, 1), (1, 1)),
        F(2, 5): ((1, 3), (-1, 1), (1, 1)),
    }
    ok_levels = d_levels(4) == want_levels
    ok_examples = all(expand_odd_zero(x).terms == terms for x, terms in examples.items())
    record("1", ok_levels and ok_examples,
           f"X_1..X_4 {'match' if ok_levels else 'differ'}, expansions of 1/2, 3/5, 2/5 "
           f"{'match' if ok_examples else 'differ'}", t)


def test_criterion_02_phi_bijection(levels):
    t = time.perf_counter()
    problems = []
    for n in range(1, 15):
        dom = levels[n - 1] + levels[n] + levels[n + 1]
        image = sorted(phi(x, n) for x in dom)
        if image != levels[n + 2]:
            problems.append(f"image differs from X_{n + 3}")
        if any(phi_inverse(y) != x for x, y in zip(dom, (phi(x, n) for x in dom))):
            problems.append(f"inverse fails at n = {n}")
    xs = x_sequence(20)
    sizes = [0] + [len(lv) for lv in levels]
    for n in range(1, 18):
        if sizes[n + 3] != sizes[n + 2] + sizes[n + 1] + sizes[n] or sizes[n + 3] != xs[n + 3]:
            problems.append(f"enumerated X_{n + 3} breaks the recurrence")
    record("2", not problems, problems[0] if problems else
           "bijection onto X_(n+3) for n <= 14; enumerated X recurrence for n <= 17", t)


def test_criterion_03_y_z_identities(levels):
    t = time.perf_counter()
    ys, zs = y_sequence(33), z_sequence(33)
    problems = []
    if x_sequence(4)[1:] != [1, 2, 3, 6]:
        problems.append("seeds differ")
    for n in range(1, 31):
        if ys[n + 3] != ys[n + 2] + ys[n + 1] + ys[n] + 2:
            problems.append(f"Y recurrence at n = {n}")
        if zs[n + 3] != zs[n + 2] + zs[n + 1] + zs[n] + 2:
            problems.append(f"Z recurrence at n = {n}")
        if ys[n] != ys[n - 1] + zs[n - 1] + 1:
            problems.append(f"Y_n = Y_(n-1) + Z_(n-1) + 1 at n = {n}")
    total = 0
    for n in range(1, 18):
        total += len(levels[n - 1])
        if total != ys[n]:
            problems.append(f"enumerated Y_{n} = {total}, recurrence {ys[n]}")
        z_direct = len(subtree_nodes(F(1, 3), n + 1))
        if z_direct != zs[n]:
            problems.append(f"enumerated Z_{n} = {z_direct}, recurrence {zs[n]}")
    record("3", not problems, problems[0] if problems else
           "identities exact for n <= 30; enumerated Y_n, Z_n agree for n <= 17", t)


def test_criterion_04_reflection():
    t = time.perf_counter()
    xs = reduced(100)
    bad = [x for x in xs if F_exact(x) != ONE - F0_exact(1 - x)]
    record("4", not bad, f"{len(xs) - len(bad)}/{len(xs)} rationals with denominator <= 100", t)


def test_criterion_05_from_ordinary():
    t = time.perf_counter()
    xs = reduced(200)
    bad = [x for x in xs if F_from_ordinary(expand_ordinary(x)) != F_exact(x)]
    record("5", not bad, f"{len(xs) - len(bad)}/{len(xs)} rationals with denominator <= 200"
           + (f", first mismatch {bad[0]}" if bad else ""), t)


def test_criterion_06_conversion():
    t = time.perf_counter()
    xs = reduced(200)
    bad = [x for x in xs if convert_ordinary_to_odd(expand_ordinary(x)) != expand_odd_zero(x)]
    record("6", not bad, f"{len(xs) - len(bad)}/{len(xs)} rationals with denominator <= 200", t)


def test_criterion_07_functional_equations():
    t = time.perf_counter()
    rng = random.Random(SEED)
    points = []
    while len(points) < 100:
        q = rng.randint(1, 500)
        points.append(F(rng.randint(0, q), q))
    bad = [(x, n) for x in points for n in range(1, 6)
           if check_functional_eq_F0(x, n) != (True, True) or check_functional_eq_F(x, n) != (True, True)]
    record("7", not bad, f"four identities at {len(points)} seeded rationals x n = 1..5"
           + (f", first failure {bad[0]}" if bad else ""), t)


def test_criterion_08a_subtree_closed_form(levels):
    t = time.perf_counter()
    roots = [x for lv in levels[:7] for x in lv]  # S0 <= 8
    bad, checked = [], 0
    for xi in roots:
        rep = expand_odd_zero(xi)
        for n in range(1, 15):
            checked += 1
            if subtree_count(rep, n) != len(subtree_nodes(xi, n)):
                bad.append((xi, n))
    record("8a", not bad, f"{checked - len(bad)}/{checked} (root, depth) pairs, {len(roots)} roots", t)


def test_criterion_08b_subtree_ratio():
    t = time.perf_counter()
    idx = LevelIndex(14)
    cases = [(a1, n) for a1 in (1, 3, 5, 7) for n in range(1, 15)]
    bad = [(a1, n) for a1, n in cases if idx.F0(n, F(1, a1)) != subtree_ratio(n, a1)]
    # every miss is the single tie xi = 1/a1, counted by the <= in F0_n
    ties = all(idx.F0(n, F(1, a1)) - subtree_ratio(n, a1) == F(1, idx.size(n))
               and idx.contains(n, F(1, a1)) for a1, n in bad)
    detail = f"{len(cases) - len(bad)}/{len(cases)} cases equal"
    if bad:
        detail += f"; each miss is exactly 1/Y_n from counting 1/a1 itself ({'confirmed' if ties else 'NOT confirmed'})"
    record("8b", not bad, detail, t)


def test_criterion_09_limit_ratios():
    t = time.perf_counter()
    rows = ratio_report(25)
    enc = lambda_enclosure(40)
    ok_enc = enc.width <= F(1, 2**40) and F("1.839286755214161") in enc
    ok_rows = all(r.distance.hi < F(1, 1000) for r in rows)
    worst = max(float(r.distance.hi) for r in rows)
    record("9", ok_enc and ok_rows,
           f"largest distance {worst:.2e} < 1e-3; L enclosure width 2^-40 "
           f"{'contains' if ok_enc else 'misses'} 1.839286755214161", t)


def test_criterion_10_ratio_set():
    t = time.perf_counter()
    total, bad = 0, []
    for level in range(11):
        for r in mediant_ratio_audit(level):
            total += 1
            if r.ratio_class is None or (r.ratio_class in FIRST_TYPE_CLASSES) != (r.node_type == FIRST):
                bad.append(r.mediant)
    record("10", not bad, f"{total - len(bad)}/{total} consecutive pairs at levels <= 10", t)


def test_criterion_11_convergence():
    t = time.perf_counter()
    golden = json.loads((GOLDEN / "convergence_max_errors.json").read_text())
    grid = [x for lv in d_levels(10) for x in lv]
    errs = max_errors(convergence_table(20, grid, golden["precision_bits"]))
    below = errs[20] < F(1, 50)
    monotone = all(errs[n + 3] <= errs[n] for n in range(8, 18))
    pinned = {str(n): str(v) for n, v in errs.items()} == golden["max_abs_error_bound"]
    record("11", below and monotone and pinned,
           f"max error at n = 20 is {float(errs[20]):.3e} < 0.02; "
           f"non-increasing n -> n+3 for n >= 8: {monotone}; golden match: {pinned}", t)


def test_criterion_12_singularity_probe():
    t = time.perf_counter()
    points = random_rationals(25, SEED)
    rows = {x: derivative_probe(x) for x in points}
    decreasing = [x for x in points if decreasing_below(rows[x], F(1, 1000))]
    small = [x for x in points if rows[x][-1].enclosure.hi < F(1, 10)]
    text = export_csv(PROBE_HEADER, probe_records([r for x in points for r in rows[x]]))
    pinned = text == (GOLDEN / "derivative_probe.csv").read_text()
    ok = len(decreasing) == len(small) == 25 and pinned
    record("12", ok, f"{len(decreasing)}/25 decrease for h <= 1e-3, {len(small)}/25 below 0.1 at "
           f"h = 1e-6; golden match: {pinned}", t)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
