"""Self-checks over every module, at desk scale.

Each suite is a list of named checks; a check returns ``(passed, detail)``.
``run_suite`` collects :class:`CheckResult` records and never stops early,
so one report shows every failure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterator

from . import contfrac as cfm
from .cubic import (
    LAMBDA,
    ONE,
    ZERO,
    CubicNumber,
    _cubic,
    _lambda_floor,
    _lambda_floor_bisect,
    enclose,
    lambda_enclosure,
    sign,
)
from .distribution import (
    F0_exact,
    F0_numeric,
    F_exact,
    F_from_ordinary,
    check_functional_eq_F,
    check_functional_eq_F0,
    reflection,
)
from .empirical import (
    FIRST_TYPE_CLASSES,
    LevelIndex,
    convergence_table,
    decreasing_below,
    derivative_probe,
    max_errors,
    mediant_ratio_audit,
    random_rationals,
    subtree_ratio,
)
from .rational import Ordering, compare, mediant
from .tree import (
    FIRST,
    d_levels,
    phi,
    phi_inverse,
    ratio_report,
    s0_pair,
    TreeNode,
    subtree_count,
    subtree_nodes,
    successors,
    x_sequence,
    y_sequence,
    z_sequence,
)

SUITES = ("arith", "field", "contfrac", "distribution", "tree", "empirical")
DEFAULT_SEED = 20240521


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}.{self.name}: {self.detail} ({self.seconds:.2f}s)"


@dataclass
class Settings:
    max_level: int = 14
    seed: int = DEFAULT_SEED


def _reduced(max_den: int, lo: int = 0) -> Iterator[Fraction]:
    """Reduced fractions in [0, 1] with denominator up to ``max_den``."""
    for q in range(1, max_den + 1):
        for p in range(lo, q + 1):
            if gcd(p, q) == 1:
                yield Fraction(p, q)


def _random_unit(rng: random.Random, count: int, max_den: int = 60) -> list[Fraction]:
    out = []
    for _ in range(count):
        q = rng.randint(1, max_den)
        out.append(Fraction(rng.randint(0, q), q))
    return out


def _first_failure(items, predicate) -> str | None:
    for item in items:
        if not predicate(item):
            return str(item)
    return None


def _summary(bad, what: str) -> tuple[bool, str]:
    if bad is None:
        return True, what
    return False, f"first failure at {bad}"


# -- arith -----------------------------------------------------------------


def _arith_canonical(s: Settings):
    n = 0
    for p in range(-40, 41):
        for q in range(-40, 41):
            if q == 0:
                continue
            x = Fraction(p, q)
            g = gcd(p, q)
            want = (p // g * (1 if q > 0 else -1), abs(q) // g)
            if (x.numerator, x.denominator) != want:
                return False, f"{p}/{q} read back as {x}"
            n += 1
    return True, f"{n} constructions canonical"


def _arith_mediant(s: Settings):
    rng = random.Random(s.seed)
    pairs = []
    for _ in range(2000):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        pairs.append((a, b))
    bad = _first_failure(pairs, lambda ab: ab[0] == ab[1] or min(ab) < mediant(*ab) < max(ab))
    return _summary(bad, f"{len(pairs)} mediants strictly between")


def _arith_compare(s: Settings):
    rng = random.Random(s.seed + 1)
    xs = [Fraction(rng.randint(-30, 30), rng.randint(1, 30)) for _ in range(200)]
    for a in xs[:60]:
        for b in xs[:60]:
            c = compare(a, b)
            if c != -compare(b, a):
                return False, f"compare not antisymmetric at {a}, {b}"
            want = Ordering.LESS if a < b else Ordering.GREATER if a > b else Ordering.EQUAL
            if c != want:
                return False, f"compare({a}, {b}) = {c.name}"
    ordered = sorted(xs, key=lambda t: (t.numerator / t.denominator))
    for a, b in zip(ordered, ordered[1:]):
        if compare(a, b) == Ordering.GREATER:
            return False, f"order breaks between {a} and {b}"
    return True, "antisymmetric, matches exact order"


# -- field -----------------------------------------------------------------


def _random_cubic(rng: random.Random) -> CubicNumber:
    return CubicNumber(*(Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(3)))


def _field_axioms(s: Settings):
    rng = random.Random(s.seed + 2)
    for _ in range(300):
        a, b, c = (_random_cubic(rng) for _ in range(3))
        if (a * b) * c != a * (b * c):
            return False, f"associativity fails at {a}, {b}, {c}"
        if a * (b + c) != a * b + a * c:
            return False, f"distributivity fails at {a}, {b}, {c}"
        if a * b != b * a:
            return False, f"commutativity fails at {a}, {b}"
        if not a.is_zero() and a * a.inverse() != ONE:
            return False, f"a * a^-1 != 1 at {a}"
    return True, "300 random triples"


def _field_recurrence(s: Settings):
    for n in range(31):
        if LAMBDA ** (n + 3) != LAMBDA ** (n + 2) + LAMBDA ** (n + 1) + LAMBDA**n:
            return False, f"power recurrence fails at n = {n}"
    return True, "L^(n+3) = L^(n+2) + L^(n+1) + L^n for n <= 30"


def _field_irreducible(s: Settings):
    # rational roots of a monic integer cubic divide the constant term
    roots = [r for r in (1, -1) if r**3 - r**2 - r - 1 == 0]
    return not roots, "no rational root among +-1"


def _field_enclosures(s: Settings):
    prev = None
    for bits in range(1, 201):
        e = lambda_enclosure(bits)
        k = bits
        m = e.lo * (1 << k)
        if not (_cubic(int(m), k) < 0 < _cubic(int(m) + 1, k)):
            return False, f"sign test fails at {bits} bits"
        if _lambda_floor(bits) != _lambda_floor_bisect(bits):
            return False, f"Newton and bisection disagree at {bits} bits"
        if prev is not None and e.width * 2 != prev.width:
            return False, f"width does not halve at {bits} bits"
        prev = e
    e40 = lambda_enclosure(40)
    if Fraction("1.839286755214161") not in e40:
        return False, "40-bit enclosure misses 1.839286755214161"
    return True, "200 nested dyadic enclosures, bisection-exact"


def _field_enclose_add(s: Settings):
    rng = random.Random(s.seed + 3)
    for _ in range(200):
        a, b = _random_cubic(rng), _random_cubic(rng)
        bits = rng.randint(8, 80)
        # one L enclosure for all three, as interval arithmetic assumes
        shared = bits + 64
        ea, eb = enclose(a, bits, lambda_bits=shared), enclose(b, bits, lambda_bits=shared)
        eab = enclose(a + b, bits, lambda_bits=shared)
        if eab not in ea + eb:
            return False, f"enclosure of a+b escapes the interval sum at {a}, {b}"
    return True, "200 random sums"


def _field_sign(s: Settings):
    checks = [(ZERO, 0), (LAMBDA - 1, 1), (2 + LAMBDA - LAMBDA**2, 1), (1 - LAMBDA, -1)]
    for a, want in checks:
        if sign(a) != want:
            return False, f"sign({a}) != {want}"
    return True, "reference signs"


# -- contfrac --------------------------------------------------------------


def _cf_roundtrip(s: Settings):
    n = 0
    for x in _reduced(200):
        z, o, r = cfm.expand_odd_zero(x), cfm.expand_odd_one(x), cfm.expand_ordinary(x)
        if cfm.eval_odd(z) != x or cfm.eval_odd(o) != x or cfm.eval_ordinary(r) != x:
            return False, f"round trip fails at {x}"
        if cfm.validate(z) or cfm.validate(o):
            return False, f"expansion of {x} is inadmissible"
        for cf, kind in ((z, "odd"), (o, "odd"), (r, "ordinary")):
            if cfm.parse_cf(cfm.format_cf(cf), kind=kind) != cf:
                return False, f"text round trip fails for {cf}"
        n += 1
    return True, f"{n} rationals, three expansions each"


def _cf_injective(s: Settings):
    seen = {}
    for x in _reduced(200):
        key = cfm.expand_odd_zero(x).terms
        if key in seen:
            return False, f"{x} and {seen[key]} share an expansion"
        seen[key] = x
    return True, f"{len(seen)} distinct expansions"


def _cf_conversion(s: Settings):
    bad = _first_failure(_reduced(200), lambda x: cfm.convert_ordinary_to_odd(cfm.expand_ordinary(x))
                         == cfm.expand_odd_zero(x))
    return _summary(bad, "conversion matches for denominators <= 200")


def _cf_sums(s: Settings):
    rng = random.Random(s.seed + 4)
    xs = _random_unit(rng, 100)
    bad = _first_failure(xs, lambda x: cfm.sum_S(cfm.expand_odd_one(x))
                         - cfm.sum_S0(cfm.expand_odd_zero(1 - x)) == 1)
    return _summary(bad, "S(x) - S0(1-x) = 1 on 100 random rationals")


# -- distribution ----------------------------------------------------------


def _dist_boundary(s: Settings):
    ok = (F_exact(0) == ZERO and F_exact(1) == ONE and F0_exact(0) == ZERO and F0_exact(1) == ONE)
    return ok, "F and F0 at 0 and 1"


def _dist_monotone(s: Settings):
    n = min(s.max_level, 14)
    grid = [x for lv in d_levels(n) for x in lv]
    grid.sort()
    values = [F0_exact(x) for x in grid]
    for (a, fa), (b, fb) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if sign(fb - fa) != 1:
            return False, f"F0 not increasing between {a} and {b}"
    return True, f"{len(grid)} grid points of Y_{n}"


def _dist_ordinary(s: Settings):
    bad = _first_failure(_reduced(200), lambda x: F_from_ordinary(cfm.expand_ordinary(x)) == F_exact(x))
    return _summary(bad, "ordinary-quotient formula exact for denominators <= 200")


def _dist_reflection(s: Settings):
    bad = _first_failure(_reduced(100), reflection)
    return _summary(bad, "F(x) = 1 - F0(1-x) for denominators <= 100")


def _dist_functional(s: Settings):
    rng = random.Random(s.seed + 5)
    xs = _random_unit(rng, 100)
    for x in xs:
        for n in range(1, 6):
            if not all(check_functional_eq_F0(x, n)) or not all(check_functional_eq_F(x, n)):
                return False, f"shift identity fails at x = {x}, n = {n}"
    return True, "100 rationals x n = 1..5, F and F0"


def _dist_numeric(s: Settings):
    for x in _reduced(30):
        cf = cfm.expand_odd_zero(x)
        exact = F0_exact(x)
        full = F0_numeric(cf, 60, complete=True)
        if not (full.lo <= enclose(exact, 80).lo and enclose(exact, 80).hi <= full.hi):
            return False, f"complete enclosure misses F0({x})"
        for k in range(len(cf.terms)):
            pre = cfm.OddCF(cf.form, cf.terms[:k])
            e = F0_numeric(pre, 60)
            inner = enclose(exact, 80)
            if not (e.lo <= inner.lo and inner.hi <= e.hi):
                return False, f"prefix of length {k} of {x} misses F0({x})"
    return True, "prefix enclosures contain the exact value"


# -- tree ------------------------------------------------------------------


def _tree_counts(s: Settings):
    top = min(s.max_level + 3, 17)
    levels = d_levels(top)
    xs = x_sequence(top)
    for k in range(1, top + 1):
        if len(levels[k - 1]) != xs[k]:
            return False, f"|X_{k}| = {len(levels[k - 1])}, recurrence gives {xs[k]}"
    ys, zs = y_sequence(33), z_sequence(33)
    for n in range(1, 31):
        if ys[n + 3] != ys[n + 2] + ys[n + 1] + ys[n] + 2:
            return False, f"Y recurrence fails at n = {n}"
        if zs[n + 3] != zs[n + 2] + zs[n + 1] + zs[n] + 2:
            return False, f"Z recurrence fails at n = {n}"
        if ys[n] != ys[n - 1] + zs[n - 1] + 1:
            return False, f"Y_n = Y_(n-1) + Z_(n-1) + 1 fails at n = {n}"
    for n in range(0, min(top, 14)):
        direct = len(subtree_nodes(Fraction(1, 3), n + 1))
        if direct != zs[n]:
            return False, f"Z_{n} = {zs[n]} but the subtree at 1/3 has {direct}"
    return True, f"enumeration to level {top}, identities to n = 30"


def _tree_phi(s: Settings):
    top = s.max_level
    levels = d_levels(top + 3)
    for n in range(1, top + 1):
        dom = [x for k in (n, n + 1, n + 2) for x in levels[k - 1]]
        image = sorted(phi(x, n) for x in dom)
        if image != levels[n + 2]:
            return False, f"phi image differs from X_{n + 3} at n = {n}"
        for x in dom:
            if phi_inverse(phi(x, n)) != x:
                return False, f"phi_inverse(phi({x})) != {x}"
    return True, f"bijection for 1 <= n <= {top}"


def _tree_levels(s: Settings):
    top = min(s.max_level, 14)
    levels = d_levels(top)
    for k, xs in enumerate(levels, 1):
        for x in xs:
            if cfm.sum_S0(cfm.expand_odd_zero(x)) != k + 1:
                return False, f"{x} appears on level {k} but S0 = {cfm.sum_S0(cfm.expand_odd_zero(x))}"
    for xs in levels[:-2]:
        for x in xs:
            node = TreeNode.at(x)
            a, b = successors(node)
            inc = sorted((a.level - node.level, b.level - node.level))
            want = [1, 1] if node.node_type == FIRST else [1, 2]
            if inc != want:
                return False, f"arrows from {x} grow levels by {inc}"
    return True, f"levels and arrow lengths to level {top}"


def _tree_bruteforce(s: Settings):
    n = min(s.max_level, 10)
    fib = [0, 1]
    while len(fib) < n + 4:
        fib.append(fib[-1] + fib[-2])
    bound = fib[n + 3]
    brute = sorted(x for x in _reduced(bound, lo=1) if x < 1
                   and s0_pair(x.numerator, x.denominator) <= n + 1)
    tree = sorted(x for lv in d_levels(n) for x in lv)
    return brute == tree, f"Y_{n} equals the filtered set of {bound}-bounded fractions"


def _tree_subtrees(s: Settings):
    depth = min(s.max_level, 14)
    roots = [x for lv in d_levels(7) for x in lv]
    checked = 0
    for xi in roots:
        rep = cfm.expand_odd_zero(xi)
        for n in range(1, depth + 1):
            direct = len(subtree_nodes(xi, n))
            if subtree_count(rep, n) != direct:
                return False, f"subtree at {xi}, depth {n}: closed form {subtree_count(rep, n)}, direct {direct}"
            checked += 1
    return True, f"{len(roots)} roots with S0 <= 8, {checked} counts"


def _tree_ratios(s: Settings):
    rows = ratio_report(25)
    worst = max(r.distance.hi for r in rows)
    return worst < Fraction(1, 1000), f"largest distance at n = 25 below {float(worst):.3g}"


# -- empirical -------------------------------------------------------------


def _emp_cdf(s: Settings):
    n = min(s.max_level, 14)
    idx = LevelIndex(n)
    grid = sorted({Fraction(p, q) for q in range(1, 40) for p in range(q + 1)})
    for m in range(1, n + 1):
        vals = [idx.F0(m, x) for x in grid]
        if any(not 0 <= v <= 1 for v in vals) or vals != sorted(vals) or vals[-1] != 1:
            return False, f"F0_{m} is not a step distribution function"
    return True, f"step distribution functions for n <= {n}"


def _emp_subtree_ratio(s: Settings):
    n_max = min(s.max_level, 14)
    idx = LevelIndex(n_max)
    bad = []
    for a1 in (1, 3, 5, 7):
        for n in range(1, n_max + 1):
            if idx.F0(n, Fraction(1, a1)) != subtree_ratio(n, a1):
                bad.append((a1, n))
    if bad:
        return False, (f"{len(bad)} of {4 * n_max} cases differ, first at (a1, n) = {bad[0]}; "
                       "the difference is 1/Y_n exactly when 1/a1 is itself in Y_n")
    return True, "counts below 1/a1 equal the subtree ratios"


def _emp_subtree_ties(s: Settings):
    n_max = min(s.max_level, 14)
    idx = LevelIndex(n_max)
    for a1 in (1, 3, 5, 7):
        xi = cfm.OddCF(cfm.ZERO_FORM, ((1, a1), (1, 1)))
        for n in range(1, n_max + 1):
            x = Fraction(1, a1)
            member = 1 if (a1 > 1 and s0_pair(1, a1) <= n + 1) else 0
            if idx.count_le(n, x) != subtree_count(xi, n) + member:
                return False, f"tie-aware count fails at a1 = {a1}, n = {n}"
    return True, "#{xi <= 1/a1} = subtree count + [1/a1 in Y_n]"


def _emp_reflection(s: Settings):
    n_max = min(s.max_level, 14)
    idx = LevelIndex(n_max)
    grid = sorted({Fraction(p, q) for q in range(1, 30) for p in range(q + 1)})
    for n in range(2, n_max + 1):
        y = idx.size(n - 1)
        for x in grid:
            lhs = (y + 1) * idx.F(n, x)
            rhs = y * (1 - idx.F0(n - 1, 1 - x)) + idx.contains(n - 1, 1 - x) + (x == 1)
            if lhs != rhs:
                return False, f"reflected count fails at n = {n}, x = {x}"
    return True, "F_n(x) matches 1 - F0_(n-1)(1-x) up to the tie terms"


def _emp_audit(s: Settings):
    top = min(s.max_level, 10)
    total = 0
    for level in range(top + 1):
        for r in mediant_ratio_audit(level):
            total += 1
            if r.ratio_class is None or r.share_class is None:
                return False, f"ratio outside the value set at {r.x}, {r.y}"
            if r.share_left + r.share_right != ONE:
                return False, f"shares do not sum to 1 at {r.x}, {r.y}"
            if (r.ratio_class in FIRST_TYPE_CLASSES) != (r.node_type == FIRST):
                return False, f"class {r.ratio_class} vs {r.node_type} type at {r.mediant}"
    return True, f"{total} consecutive pairs up to level {top}"


def _emp_convergence(s: Settings):
    grid = [x for lv in d_levels(10) for x in lv]
    rows = convergence_table(20, grid, min_n=8)
    errs = max_errors(rows)
    if errs[20] >= Fraction(1, 50):
        return False, f"max error at n = 20 is {float(errs[20]):.3g}"
    for n in range(8, 18):
        if errs[n + 3] > errs[n]:
            return False, f"max error grows from n = {n} to {n + 3}"
    return True, f"max error at n = 20 is {float(errs[20]):.3g}"


def _emp_probe(s: Settings):
    for x in random_rationals(25, s.seed):
        rows = derivative_probe(x)
        if not decreasing_below(rows, Fraction(1, 1000)):
            return False, f"quotients at {x} do not decrease for h <= 1e-3"
        if not rows[-1].enclosure.hi < Fraction(1, 10):
            return False, f"quotient at {x}, h = {rows[-1].h} is not below 0.1"
    return True, "25 random rationals"


CHECKS: dict[str, list[tuple[str, Callable[[Settings], tuple[bool, str]]]]] = {
    "arith": [
        ("canonical", _arith_canonical),
        ("mediant", _arith_mediant),
        ("compare", _arith_compare),
    ],
    "field": [
        ("axioms", _field_axioms),
        ("power_recurrence", _field_recurrence),
        ("irreducible", _field_irreducible),
        ("lambda_enclosure", _field_enclosures),
        ("enclose_addition", _field_enclose_add),
        ("sign", _field_sign),
    ],
    "contfrac": [
        ("round_trip", _cf_roundtrip),
        ("injective", _cf_injective),
        ("conversion", _cf_conversion),
        ("quotient_sums", _cf_sums),
    ],
    "distribution": [
        ("boundary", _dist_boundary),
        ("monotone", _dist_monotone),
        ("ordinary_formula", _dist_ordinary),
        ("reflection", _dist_reflection),
        ("functional_equations", _dist_functional),
        ("prefix_enclosures", _dist_numeric),
    ],
    "tree": [
        ("level_counts", _tree_counts),
        ("phi_bijection", _tree_phi),
        ("levels_and_arrows", _tree_levels),
        ("brute_force", _tree_bruteforce),
        ("subtree_counts", _tree_subtrees),
        ("limit_ratios", _tree_ratios),
    ],
    "empirical": [
        ("step_cdf", _emp_cdf),
        ("subtree_ratio", _emp_subtree_ratio),
        ("subtree_ratio_ties", _emp_subtree_ties),
        ("reflection", _emp_reflection),
        ("ratio_audit", _emp_audit),
        ("convergence", _emp_convergence),
        ("derivative_probe", _emp_probe),
    ],
}


def run_suite(suite: str, settings: Settings | None = None) -> Iterator[CheckResult]:
    """Run one suite (or ``'all'``), yielding results as they finish."""
    settings = settings or Settings()
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in CHECKS:
            raise ValueError(f"unknown suite {name!r}")
        for check_name, fn in CHECKS[name]:
            start = time.perf_counter()
            try:
                passed, detail = fn(settings)
            except Exception as exc:  # a crash is a failed check, not an abort
                passed, detail = False, f"raised {type(exc).__name__}: {exc}"
            yield CheckResult(name, check_name, bool(passed), detail, time.perf_counter() - start)
