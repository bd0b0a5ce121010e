"""Odd continued fractions, the distribution functions F and F0, and the level tree."""

from __future__ import annotations

from .contfrac import (
    OddCF,
    OrdinaryCF,
    convert_ordinary_to_odd,
    eval_odd,
    eval_ordinary,
    expand_odd_one,
    expand_odd_zero,
    expand_ordinary,
    format_cf,
    odd_div,
    parse_cf,
    sum_S,
    sum_S0,
    validate,
)
from .cubic import LAMBDA, CubicNumber, Enclosure, enclose, lambda_enclosure, sign, to_decimal
from .distribution import F0_exact, F0_numeric, F_exact, F_from_ordinary
from .errors import BudgetExceededError, DomainError, OddCFError, ParseError
from .rational import compare, mediant, parse_rational

__all__ = [
    "BudgetExceededError",
    "CubicNumber",
    "DomainError",
    "Enclosure",
    "F0_exact",
    "F0_numeric",
    "F_exact",
    "F_from_ordinary",
    "LAMBDA",
    "OddCF",
    "OddCFError",
    "OrdinaryCF",
    "ParseError",
    "compare",
    "convert_ordinary_to_odd",
    "enclose",
    "eval_odd",
    "eval_ordinary",
    "expand_odd_one",
    "expand_odd_zero",
    "expand_ordinary",
    "format_cf",
    "lambda_enclosure",
    "mediant",
    "odd_div",
    "parse_cf",
    "parse_rational",
    "sign",
    "sum_S",
    "sum_S0",
    "to_decimal",
    "validate",
]
