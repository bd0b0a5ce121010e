"""Stern–Brocot sequences and the tree re-leveled by odd partial-quotient sums.

Every rational in (0, 1) is a node; the node ``xi = x (+) y`` has successors
``x (+) xi`` and ``xi (+) y``.  Its *level* is ``S0(xi) - 1``, so the root 1/2
sits on level 1.  An arrow is short when the level grows by one and long
when it grows by two; nodes whose odd expansion ends in ``1/1`` (first
type) have two short arrows, the others one short and one long.

X_n, Y_n count the nodes on level n and on levels 1..n; Z_n counts the
nodes of the subtree rooted at 1/3 on its first ``n + 1`` levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .contfrac import (
    ZERO_FORM,
    OddCF,
    OrdinaryCF,
    eval_odd,
    eval_ordinary,
    expand_odd_zero,
    expand_ordinary,
    normalize_tail,
    sum_S0,
    validate,
)
from .cubic import LAMBDA, ONE, CubicNumber, Enclosure, enclose
from .errors import BudgetExceededError, DomainError
from .rational import mediant

DEFAULT_BUDGET = 5_000_000

FIRST = "first"
SECOND = "second"


def s0_pair(p: int, q: int) -> int:
    """S0(p/q) for ``0 <= p <= q`` without building the expansion."""
    s = 0
    while p:
        a = 2 * (-(-q // (2 * p))) - 1
        s += a
        q, p = p, abs(q - p * a)
    return s


def level_of(x) -> int:
    x = Fraction(x)
    if not 0 < x < 1:
        raise DomainError(f"{x} is not an interior node")
    return s0_pair(x.numerator, x.denominator) - 1


def classify(rep: OddCF) -> str:
    """``'first'`` when the expansion ends in quotient 1, else ``'second'``."""
    if not rep.terms:
        raise DomainError("the empty expansion is not a tree node")
    return FIRST if rep.terms[-1][1] == 1 else SECOND


def stern_brocot_level(n: int) -> list[Fraction]:
    """The sorted sequence F_n: 0/1, 1/1 and ``n`` rounds of mediant insertion."""
    if n < 0:
        raise DomainError("n must be >= 0")
    seq = [(0, 1), (1, 1)]
    for _ in range(n):
        nxt = [seq[0]]
        for (a, b), (c, d) in zip(seq, seq[1:]):
            nxt.append((a + c, b + d))
            nxt.append((c, d))
        seq = nxt
    return [Fraction(p, q) for p, q in seq]


def stern_brocot_parents(x) -> tuple[Fraction, Fraction]:
    """The neighbours ``(l, r)`` with ``x = l (+) r``.

    For ``x = [0; b1, ..., bk]`` they are ``[0; b1, ..., b_{k-1}]`` and
    ``[0; b1, ..., bk - 1]``, in some order.
    """
    x = Fraction(x)
    if not 0 < x < 1:
        raise DomainError(f"{x} is not in (0, 1)")
    terms = expand_ordinary(x).terms
    u = eval_ordinary(OrdinaryCF(0, terms[:-1]))
    v = eval_ordinary(OrdinaryCF(0, terms[:-1] + (terms[-1] - 1,)))
    left, right = min(u, v), max(u, v)
    if mediant(left, right) != x:
        raise AssertionError(f"parents {left}, {right} do not produce {x}")
    return left, right


@dataclass(frozen=True)
class TreeNode:
    value: Fraction
    left_parent: Fraction
    right_parent: Fraction
    rep: OddCF
    level: int
    node_type: str

    @classmethod
    def make(cls, value, left_parent, right_parent) -> "TreeNode":
        value = Fraction(value)
        rep = expand_odd_zero(value)
        return cls(value, Fraction(left_parent), Fraction(right_parent), rep,
                   sum_S0(rep) - 1, classify(rep))

    @classmethod
    def at(cls, x) -> "TreeNode":
        """The node carrying ``x`` with its Stern–Brocot parents."""
        left, right = stern_brocot_parents(x)
        return cls.make(x, left, right)


ROOT = TreeNode.make(Fraction(1, 2), Fraction(0), Fraction(1))


def successors(node: TreeNode) -> tuple[TreeNode, TreeNode]:
    """``(x (+) xi, xi (+) y)`` for ``xi = x (+) y``."""
    left = TreeNode.make(mediant(node.left_parent, node.value), node.left_parent, node.value)
    right = TreeNode.make(mediant(node.value, node.right_parent), node.value, node.right_parent)
    return left, right


# -- enumeration -----------------------------------------------------------


def d_levels(n: int, budget: int = DEFAULT_BUDGET) -> list[list[Fraction]]:
    """Level sets ``[X_1, ..., X_n]``, each sorted, by breadth-first expansion.

    A node on level ``k`` sends its children to levels ``k+1`` and ``k+1`` or
    ``k+2``, so two pending buckets ahead of the current level suffice.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    # pending[k] holds (p, q, lp, lq, rp, rq) for nodes on level k
    pending: dict[int, list[tuple[int, int, int, int, int, int]]] = {1: [(1, 2, 0, 1, 1, 1)]}
    levels = []
    seen = 0
    for k in range(1, n + 1):
        current = pending.pop(k, [])
        seen += len(current)
        if seen > budget:
            raise BudgetExceededError(f"more than {budget} nodes needed for level {n}")
        levels.append(sorted(Fraction(p, q) for p, q, *_ in current))
        if k == n:
            break
        for p, q, lp, lq, rp, rq in current:
            for child in ((p + lp, q + lq, lp, lq, p, q), (p + rp, q + rq, p, q, rp, rq)):
                lvl = s0_pair(child[0], child[1]) - 1
                if lvl <= n:
                    pending.setdefault(lvl, []).append(child)
    return levels


def _walk(n: int, start: tuple[int, int, int, int, int, int], budget: int) -> list[tuple[int, int]]:
    """In-order listing of the subtree at ``start`` restricted to levels <= n.

    The Stern–Brocot tree is a search tree, so the output is sorted.
    """
    out: list[tuple[int, int]] = []
    p, q = start[0], start[1]
    if s0_pair(p, q) - 1 > n:
        return out
    # explicit stack: (node, expanded?)
    stack = [(start, False)]
    while stack:
        node, expanded = stack.pop()
        p, q, lp, lq, rp, rq = node
        if expanded:
            out.append((p, q))
            if len(out) > budget:
                raise BudgetExceededError(f"more than {budget} nodes below level {n}")
            continue
        right = (p + rp, q + rq, p, q, rp, rq)
        left = (p + lp, q + lq, lp, lq, p, q)
        if s0_pair(right[0], right[1]) - 1 <= n:
            stack.append((right, False))
        stack.append((node, True))
        if s0_pair(left[0], left[1]) - 1 <= n:
            stack.append((left, False))
    return out


def y_set(n: int, budget: int = DEFAULT_BUDGET) -> list[Fraction]:
    """The sorted set Y_n of rationals in (0, 1) with ``S0 <= n + 1``."""
    if n < 1:
        return []
    return [Fraction(p, q) for p, q in _walk(n, (1, 2, 0, 1, 1, 1), budget)]


def subtree_nodes(xi, n: int, budget: int = DEFAULT_BUDGET) -> list[Fraction]:
    """Sorted nodes of the subtree rooted at ``xi`` on levels 1..n."""
    node = TreeNode.at(xi)
    lp, rp = node.left_parent, node.right_parent
    start = (node.value.numerator, node.value.denominator,
             lp.numerator, lp.denominator, rp.numerator, rp.denominator)
    return [Fraction(p, q) for p, q in _walk(n, start, budget)]


# -- counts ----------------------------------------------------------------

X_SEEDS = (1, 2, 3, 6)
# subtree of 1/3 on levels up to 2, 3, 4: {1/3}, {1/3, 1/4}, {1/3, 1/4, 2/5, 1/5, 2/7}
Z_SEEDS = (1, 2, 5)


@dataclass(frozen=True)
class LevelCounts:
    n: int
    X: int
    Y: int
    Z: int


def x_sequence(upto: int) -> list[int]:
    """``[X_0, X_1, ..., X_upto]`` with ``X_0 = 0``."""
    xs = [0, *X_SEEDS]
    while len(xs) <= upto:
        xs.append(xs[-1] + xs[-2] + xs[-3])
    return xs[: upto + 1]


def y_sequence(upto: int) -> list[int]:
    """``[Y_0, ..., Y_upto]``, partial sums of X."""
    ys = [0]
    for x in x_sequence(upto)[1:]:
        ys.append(ys[-1] + x)
    return ys


def z_sequence(upto: int) -> list[int]:
    """``[Z_0, ..., Z_upto]`` from ``Z_{n+3} = Z_{n+2} + Z_{n+1} + Z_n + 2``."""
    zs = [0, *Z_SEEDS]
    while len(zs) <= upto:
        zs.append(zs[-1] + zs[-2] + zs[-3] + 2)
    return zs[: upto + 1]


def counts(n: int) -> LevelCounts:
    if n < 0:
        raise DomainError("n must be >= 0")
    return LevelCounts(n, x_sequence(n)[n], y_sequence(n)[n], z_sequence(n)[n])


def subtree_count(xi: OddCF, n: int) -> int:
    """Nodes of the subtree at ``xi`` on levels 1..n, in closed form.

    A first-type root grows like the whole tree, a second-type root like
    the subtree at 1/3, shifted by the root's level.
    """
    if xi.form != ZERO_FORM or not xi.terms:
        raise DomainError("subtree_count needs a form-zero expansion of an interior node")
    bad = validate(xi)
    if bad is not None:
        raise DomainError(f"invalid expansion: {bad.message}")
    idx = n - sum_S0(xi) + 2
    if idx <= 0:
        return 0
    if xi.terms[-1][1] == 1:
        return y_sequence(idx)[idx]
    return z_sequence(idx)[idx]


# -- the bijection X_{n+2} u X_{n+1} u X_n -> X_{n+3} ---------------------


def _phi_terms(terms: tuple, shift: int) -> list:
    """Image terms; ``shift`` is ``level(Phi(x)) - level(x)`` (1, 2 or 3)."""
    t = list(terms)
    last_one = t[-1][1] == 1
    if shift == 1:
        if last_one:
            eps, a = t[-2]
            return t[:-2] + [(eps, a + 2)]
        return t + [(1, 1)]
    if shift == 2:
        if last_one:
            return t[:-1] + [(1, 1)] * 3
        return t + [(-1, 1), (1, 1)]
    if last_one:
        eps, a = t[-2]
        return t[:-2] + [(eps, a + 2), (1, 1), (1, 1)]
    return t + [(-1, 1), (1, 1), (1, 1)]


def phi(x, n: int) -> Fraction:
    """Image of ``x`` in ``X_{n+3}`` for ``x`` in ``X_{n+2}``, ``X_{n+1}`` or ``X_n``."""
    x = Fraction(x)
    if n < 1:
        raise DomainError("n must be >= 1")
    if not 0 < x < 1:
        raise DomainError(f"{x} is not an interior node")
    rep = expand_odd_zero(x)
    level = sum_S0(rep) - 1
    shift = n + 3 - level
    if shift not in (1, 2, 3):
        raise DomainError(f"{x} lies on level {level}, not in levels {n}..{n + 2}")
    if rep.terms[-1][1] == 1 and len(rep.terms) < 2:
        raise DomainError(f"{x} has no admissible image")
    terms = normalize_tail(_phi_terms(rep.terms, shift))
    return eval_odd(OddCF(ZERO_FORM, terms))


def phi_inverse(y) -> Fraction:
    """Preimage of ``y`` under ``phi``; the level of ``y`` fixes ``n``."""
    y = Fraction(y)
    if not 0 < y < 1:
        raise DomainError(f"{y} is not an interior node")
    t = list(expand_odd_zero(y).terms)
    l = len(t)
    eps_l, a_l = t[-1]
    if a_l > 1:
        x = t[:-1] + [(eps_l, a_l - 2), (1, 1)]
    elif l >= 2 and t[-2][1] > 1:
        x = t[:-1]
    elif l >= 3 and t[-2][0] == -1:
        x = t[:-2]
    elif l >= 3 and t[-3][1] > 1:
        eps, a = t[-3]
        x = t[:-3] + [(eps, a - 2), (1, 1)]
    elif l >= 4 and t[-3][0] == 1:
        x = t[:-3] + [(1, 1)]
    elif l >= 4:
        x = t[:-3]
    else:
        raise DomainError(f"{y} lies too low in the tree to have a preimage")
    x = normalize_tail(x)
    if not x:
        raise DomainError(f"{y} lies too low in the tree to have a preimage")
    return eval_odd(OddCF(ZERO_FORM, x))


# -- limit ratios ----------------------------------------------------------


@dataclass(frozen=True)
class RatioRow:
    name: str
    value: Fraction
    limit: CubicNumber
    distance: Enclosure


def ratio_report(n: int, precision_bits: int = 64) -> list[RatioRow]:
    """``Y_n/Y_{n+1}``, ``Z_n/Z_{n+1}`` (limit 1/L) and ``Y_n/Z_n`` (limit 1/(L-1))."""
    if n < 4:
        raise DomainError("ratio_report needs n >= 4")
    ys, zs = y_sequence(n + 1), z_sequence(n + 1)
    inv = ONE / LAMBDA
    inv_m1 = ONE / (LAMBDA - 1)
    rows = []
    for name, value, limit in (
        (f"Y{n}/Y{n + 1}", Fraction(ys[n], ys[n + 1]), inv),
        (f"Z{n}/Z{n + 1}", Fraction(zs[n], zs[n + 1]), inv),
        (f"Y{n}/Z{n}", Fraction(ys[n], zs[n]), inv_m1),
    ):
        diff = enclose(CubicNumber(value) - limit, precision_bits)
        if diff.hi < 0:
            diff = -diff
        elif diff.lo < 0:
            diff = Enclosure(Fraction(0), max(-diff.lo, diff.hi))
        rows.append(RatioRow(name, value, limit, diff))
    return rows


def iter_levels(levels: list[list[Fraction]]) -> Iterator[tuple[int, Fraction]]:
    for k, xs in enumerate(levels, 1):
        for x in xs:
            yield k, x

