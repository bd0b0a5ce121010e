"""Ordinary and odd continued fractions of rationals.

An odd continued fraction carries a leading term (0 or 1, the *form*) and a
list of signed terms ``(eps, a)`` with ``eps = +-1`` and ``a`` odd::

    [0; e1/a1, ..., el/al] = e1/(a1 + e2/(a2 + ... + el/al))
    [1; e1/a1, ..., el/al] = 1 + e1/(a1 + ...)

Form zero and form one of the same number are linked by
``[0; e1/a1, ...] = 1 - [1; -e1/a1, ...]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DomainError, ParseError

ZERO_FORM = "zero"
ONE_FORM = "one"

Term = tuple[int, int]


@dataclass(frozen=True)
class OrdinaryCF:
    """``[b0; b1, ..., bl]`` with ``b_j >= 1``; canonical when ``bl >= 2``."""

    b0: int
    terms: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(b) for b in self.terms))
        if any(b < 1 for b in self.terms):
            raise DomainError("partial quotients after b0 must be >= 1")

    def canonical(self) -> "OrdinaryCF":
        """Fold a trailing quotient 1 into its predecessor."""
        if self.terms and self.terms[-1] == 1:
            if len(self.terms) == 1:
                return OrdinaryCF(self.b0 + 1, ())
            return OrdinaryCF(self.b0, self.terms[:-2] + (self.terms[-2] + 1,))
        return self

    def __str__(self) -> str:
        return format_cf(self)


@dataclass(frozen=True)
class OddCF:
    """Odd continued fraction: leading term 0 (``form='zero'``) or 1 (``form='one'``)."""

    form: str
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        if self.form not in (ZERO_FORM, ONE_FORM):
            raise DomainError(f"form must be 'zero' or 'one', got {self.form!r}")
        object.__setattr__(self, "terms", tuple((int(e), int(a)) for e, a in self.terms))

    @property
    def lead(self) -> int:
        return 0 if self.form == ZERO_FORM else 1

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    @property
    def quotients(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return format_cf(self)


CF = Union[OrdinaryCF, OddCF]


def _unit_interval(x) -> Fraction:
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    return x


# -- division and expansion ------------------------------------------------


def odd_div(a: int, b: int) -> tuple[int, int]:
    """Odd quotient ``q`` and remainder ``r`` with ``a = b*q + r``, ``-b < r <= b``."""
    if b == 0:
        raise ZeroDivisionError("odd_div by zero")
    if a < 1 or b < 1:
        raise DomainError("odd_div needs positive integers")
    q = 2 * (-(-a // (2 * b))) - 1
    return q, a - b * q


def expand_ordinary(x) -> OrdinaryCF:
    """Canonical regular continued fraction by the Euclidean algorithm."""
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    b0, p = divmod(p, q)
    terms = []
    while p:
        b, r = divmod(q, p)
        terms.append(b)
        q, p = p, r
    return OrdinaryCF(b0, tuple(terms))


def eval_ordinary(cf: OrdinaryCF) -> Fraction:
    value = Fraction(0)
    for b in reversed(cf.terms):
        value = 1 / (b + value)
    return cf.b0 + value


def _odd_terms(p: int, q: int) -> list[Term]:
    """Signed odd terms of ``p/q`` in ``(0, 1]``, leading sign +1."""
    terms = []
    eps = 1
    while p:
        a, r = odd_div(q, p)
        terms.append((eps, a))
        eps = 1 if r >= 0 else -1
        q, p = p, abs(r)
    return terms


def expand_odd_zero(x) -> OddCF:
    """Form-zero odd expansion ``[0; e1/a1, ...]`` of ``x`` in ``[0, 1]``."""
    x = _unit_interval(x)
    return OddCF(ZERO_FORM, tuple(_odd_terms(x.numerator, x.denominator)))


def expand_odd_one(x) -> OddCF:
    """Form-one odd expansion ``[1; e1/a1, ...]``, via the zero form of ``1 - x``."""
    x = _unit_interval(x)
    terms = _odd_terms((1 - x).numerator, (1 - x).denominator)
    if terms:
        terms[0] = (-terms[0][0], terms[0][1])
    return OddCF(ONE_FORM, tuple(terms))


def eval_odd(cf: OddCF) -> Fraction:
    value = Fraction(0)
    for eps, a in reversed(cf.terms):
        den = a + value
        assert den != 0, f"vanishing denominator in {cf}"
        value = eps / den
    return cf.lead + value


def reflect(cf: OddCF) -> OddCF:
    """Switch form while flipping the first sign: ``x`` in form zero ↔ ``1 - x`` in form one."""
    terms = list(cf.terms)
    if terms:
        terms[0] = (-terms[0][0], terms[0][1])
    return OddCF(ONE_FORM if cf.form == ZERO_FORM else ZERO_FORM, tuple(terms))


def normalize_tail(terms: Iterable[Term]) -> tuple[Term, ...]:
    """Rewrite a trailing ``e/a, -1/1`` as ``e/(a-2), 1/1`` (same value)."""
    terms = list(terms)
    if len(terms) >= 2 and terms[-1] == (-1, 1):
        eps, a = terms[-2]
        if a < 3:
            raise DomainError("cannot normalize a trailing -1/1 after a quotient below 3")
        terms[-2:] = [(eps, a - 2), (1, 1)]
    return tuple(terms)


# -- partial-quotient sums -------------------------------------------------


def sum_S0(cf: OddCF) -> int:
    """Sum of the partial quotients of a form-zero expansion."""
    if cf.form != ZERO_FORM:
        raise DomainError("sum_S0 expects a form-zero expansion")
    return sum(cf.quotients)


def sum_S(cf: OddCF) -> int:
    """Partial-quotient sum of a form-one expansion, leading 1 included.

    With this count ``sum_S(expand_odd_one(x)) == 1 + sum_S0(expand_odd_zero(1 - x))``
    and ``sum_S`` at ``x = 1`` is 1.
    """
    if cf.form != ONE_FORM:
        raise DomainError("sum_S expects a form-one expansion")
    return 1 + sum(cf.quotients)


# -- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """First broken admissibility rule; ``index`` is 1-based (0 for the whole CF)."""

    index: int
    rule: str
    message: str

    def __str__(self) -> str:
        return self.message


def validate(cf: OddCF, prefix: bool = False) -> Violation | None:
    """Return ``None`` for an admissible expansion, else the first violation.

    ``prefix=True`` waives the rule on the last term, for truncations of
    longer expansions.
    """
    terms = cf.terms
    for i, (eps, a) in enumerate(terms, 1):
        if eps not in (-1, 1):
            return Violation(i, "sign", f"eps_{i} = {eps} is not +1 or -1")
        if a < 1:
            return Violation(i, "positive", f"a_{i} = {a} is not positive")
        if a % 2 == 0:
            return Violation(i, "odd", f"a_{i} = {a} is even")
    for j in range(1, len(terms)):
        a, eps_next = terms[j - 1][1], terms[j][0]
        if a + eps_next < 2:
            return Violation(j, "adjacent",
                             f"a_{j} + eps_{j + 1} = {a + eps_next} < 2")
    if terms:
        want = 1 if cf.form == ZERO_FORM else -1
        if terms[0][0] != want:
            return Violation(1, "first-sign",
                             f"form {cf.form} needs eps_1 = {want:+d}, got {terms[0][0]:+d}")
        l = len(terms)
        # in form one a lone -1/1 is the expansion of 0 and is admissible
        exempt = cf.form == ONE_FORM and l == 1
        if not prefix and not exempt and terms[-1] == (-1, 1):
            return Violation(l, "last", f"a_{l} = 1 needs eps_{l} = +1")
    return None


def is_valid(cf: OddCF, prefix: bool = False) -> bool:
    return validate(cf, prefix) is None


# -- ordinary to odd conversion ---------------------------------------------


def convert_ordinary_to_odd(cf: OrdinaryCF) -> OddCF:
    """Turn a regular expansion of ``x`` in ``[0, 1]`` into the form-zero odd one.

    Repeatedly rewrites the first even quotient ``b``:

    * last term: ``b -> b-1`` followed by ``+1/1``;
    * next quotient ``c > 1``: ``b+1, -1/1, +1/(c-1)``;
    * next quotient ``1`` followed by ``d``: ``b+1, -1/(d+1)``.
    """
    cf = cf.canonical()
    if cf.b0 == 1 and not cf.terms:
        return OddCF(ZERO_FORM, ((1, 1),))
    if cf.b0 != 0:
        raise DomainError(f"expected a value in [0, 1], got {format_cf(cf)}")
    terms: list[list[int]] = [[1, b] for b in cf.terms]
    i = 0
    while True:
        while i < len(terms) and terms[i][1] % 2:
            i += 1
        if i == len(terms):
            break
        b = terms[i][1]
        if i + 1 == len(terms):
            terms[i][1] = b - 1
            terms.append([1, 1])
        elif terms[i + 1][1] > 1:
            c = terms[i + 1][1]
            terms[i][1] = b + 1
            terms[i + 1:i + 2] = [[-1, 1], [1, c - 1]]
        elif i + 2 < len(terms):
            d = terms[i + 2][1]
            terms[i][1] = b + 1
            terms[i + 1:i + 3] = [[-1, d + 1]]
        else:
            # non-canonical trailing 1: b + 1/1 = b + 1
            terms[i][1] = b + 1
            del terms[i + 1]
    return OddCF(ZERO_FORM, tuple((e, a) for e, a in terms))


# -- text form -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([\[\];,/\-]))")


def _tokens(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        tok = m.group(1) or m.group(2)
        out.append((tok, m.start(1) if m.group(1) else m.start(2)))
        pos = m.end()
    out.append(("", len(text)))
    return out


def parse_cf(text: str, kind: str | None = None) -> CF:
    """Parse ``[b0; b1, ...]`` (ordinary) or ``[0|1; e/a, ...]`` (odd).

    The kind is inferred from the terms; ``kind`` ('ordinary' or 'odd')
    decides for an empty body and rejects the other kind.  Odd input must
    be admissible as written; ordinary input is canonicalized.
    """
    toks = _tokens(text)
    k = 0

    def peek() -> tuple[str, int]:
        return toks[k]

    def take(expected: str | None = None) -> tuple[str, int]:
        nonlocal k
        tok, pos = toks[k]
        if expected is not None and tok != expected:
            shown = repr(tok) if tok else "end of input"
            raise ParseError(f"expected {expected!r}, found {shown}", pos)
        k += 1
        return tok, pos

    def integer() -> tuple[int, int]:
        tok, pos = take()
        if not tok.isdigit():
            shown = repr(tok) if tok else "end of input"
            raise ParseError(f"expected an integer, found {shown}", pos)
        return int(tok), pos

    take("[")
    neg = False
    if peek()[0] == "-":
        take()
        neg = True
    b0, b0_pos = integer()
    if neg:
        b0 = -b0
    take(";")
    ordinary: list[int] = []
    odd: list[tuple[int, int, int]] = []
    if peek()[0] != "]":
        while True:
            start = peek()[1]
            sign = 1
            if peek()[0] == "-":
                take()
                sign = -1
            num, _ = integer()
            if peek()[0] == "/":
                take()
                den, den_pos = integer()
                if num != 1:
                    raise ParseError(f"signed term numerator must be 1, got {num}", start)
                odd.append((sign, den, den_pos))
            else:
                if sign < 0:
                    raise ParseError("ordinary partial quotients must be positive", start)
                if num < 1:
                    raise ParseError("ordinary partial quotients must be >= 1", start)
                ordinary.append(num)
            if ordinary and odd:
                raise ParseError("mixed ordinary and signed terms", start)
            if peek()[0] == ",":
                take()
                continue
            break
    take("]")
    tok, pos = peek()
    if tok:
        raise ParseError(f"trailing input {tok!r}", pos)

    is_odd = bool(odd) or (not ordinary and kind == "odd")
    if kind == "ordinary" and odd:
        raise ParseError("expected an ordinary continued fraction", 0)
    if kind == "odd" and ordinary:
        raise ParseError("expected an odd continued fraction", 0)
    if not is_odd:
        return OrdinaryCF(b0, tuple(ordinary)).canonical()

    if b0 not in (0, 1):
        raise ParseError(f"odd continued fraction must start with 0 or 1, got {b0}", b0_pos)
    for sign, a, pos in odd:
        if a % 2 == 0:
            raise ParseError(f"even partial quotient {a} in odd continued fraction", pos)
    cf = OddCF(ZERO_FORM if b0 == 0 else ONE_FORM, tuple((s, a) for s, a, _ in odd))
    bad = validate(cf)
    if bad is not None:
        where = odd[bad.index - 1][2] if bad.index else 0
        raise ParseError(f"inadmissible odd continued fraction: {bad.message}", where)
    return cf


def format_cf(cf: CF) -> str:
    if isinstance(cf, OrdinaryCF):
        body = ", ".join(str(b) for b in cf.terms)
        return f"[{cf.b0}; {body}]" if body else f"[{cf.b0}; ]"
    body = ", ".join(f"{'-' if e < 0 else ''}1/{a}" for e, a in cf.terms)
    return f"[{cf.lead}; {body}]" if body else f"[{cf.lead}; ]"


def evaluate(cf: CF) -> Fraction:
    return eval_odd(cf) if isinstance(cf, OddCF) else eval_ordinary(cf)
