"""Command-line interface: ``oddcf <command> ...``.

Exit status is 0 on success, 1 when a ``verify`` check fails and 2 for
usage, parse, domain and budget errors.  Errors go to stderr, the first
line always reading ``error: <kind>: <detail>``.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import contfrac as cfm
from .cubic import to_decimal
from .distribution import F0_exact, F_exact
from .empirical import (
    CONVERGENCE_HEADER,
    PROBE_HEADER,
    RATIO_HEADER,
    convergence_records,
    convergence_table,
    derivative_probe,
    export_csv,
    mediant_ratio_audit,
    probe_records,
    random_rationals,
    ratio_records,
)
from .errors import OddCFError
from .rational import format_fixed, format_rational, parse_rational
from .tree import DEFAULT_BUDGET, counts, d_levels, ratio_report
from .verify import DEFAULT_SEED, SUITES, Settings, run_suite


class UsageError(Exception):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would print its own format and exit
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    return parse_rational(text)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oddcf", description="Odd continued fractions and their distribution function.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("expand", help="continued fraction of a rational")
    c.add_argument("x", help="rational p/q")
    c.add_argument("--kind", choices=("ordinary", "odd"), default="odd")
    c.add_argument("--form", choices=("zero", "one"), default="zero",
                   help="leading term of the odd expansion")

    c = sub.add_parser("convert", help="ordinary continued fraction to the odd form-zero one")
    c.add_argument("cf", help='e.g. "[0; 2, 2]"')

    c = sub.add_parser("eval", help="value of a continued fraction")
    c.add_argument("cf")

    for name, what in (("eval-f", "F"), ("eval-f0", "F0")):
        c = sub.add_parser(name, help=f"{what}(x) at a rational x in [0, 1]")
        c.add_argument("x")
        c.add_argument("--exact", action="store_true", help="also print the element of Q(L)")
        c.add_argument("--digits", type=_positive, default=12)

    c = sub.add_parser("enumerate", help="the level set X_n or the cumulative set Y_n")
    c.add_argument("--level", type=_positive, required=True)
    c.add_argument("--set", dest="which", choices=("X", "Y"), default="X")
    c.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    c = sub.add_parser("counts", help="X_n, Y_n, Z_n from their recurrences")
    c.add_argument("--upto", type=_positive, required=True)

    c = sub.add_parser("ratios", help="Y_n/Y_(n+1), Z_n/Z_(n+1), Y_n/Z_n and their limits")
    c.add_argument("--at", type=_positive, required=True)
    c.add_argument("--digits", type=_positive, default=12)

    c = sub.add_parser("verify", help="run the built-in checks")
    c.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    c.add_argument("--max-level", type=_positive, default=14)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)

    c = sub.add_parser("convergence", help="CSV: empirical F0_n against F0 on the Y_g grid")
    c.add_argument("--max-n", type=_positive, default=20)
    c.add_argument("--min-n", type=_positive, default=1)
    c.add_argument("--grid-level", type=_positive, default=10)
    c.add_argument("--digits", type=_positive, default=12)
    c.add_argument("--out")

    c = sub.add_parser("ratio-audit", help="CSV: mediant ratio classes on Stern–Brocot levels")
    c.add_argument("--max-level", type=_positive, default=8)
    c.add_argument("--out")

    c = sub.add_parser("derivative-probe", help="CSV: symmetric difference quotients of F")
    c.add_argument("x", nargs="*", help="probe points; default: seeded random rationals")
    c.add_argument("--step", action="append", dest="steps", metavar="H",
                   help="step h (repeatable); default 10^-1 .. 10^-6")
    c.add_argument("--random", type=_positive, default=25, dest="count")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--digits", type=_positive, default=12)
    c.add_argument("--out")
    return p


def _emit(text: str, out) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _cmd_expand(a, out):
    x = _rational(a.x)
    if a.kind == "ordinary":
        cf = cfm.expand_ordinary(x)
    elif a.form == "zero":
        cf = cfm.expand_odd_zero(x)
    else:
        cf = cfm.expand_odd_one(x)
    _emit(cfm.format_cf(cf), out)
    return 0


def _cmd_convert(a, out):
    cf = cfm.parse_cf(a.cf, kind="ordinary")
    _emit(cfm.format_cf(cfm.convert_ordinary_to_odd(cf)), out)
    return 0


def _cmd_eval(a, out):
    _emit(format_rational(cfm.evaluate(cfm.parse_cf(a.cf))), out)
    return 0


def _cmd_eval_f(a, out, name, fn):
    value = fn(_rational(a.x))
    if a.exact:
        _emit(f"{name} = {value}", out)
        _emit(f"≈ {to_decimal(value, a.digits)}", out)
    else:
        _emit(to_decimal(value, a.digits), out)
    return 0


def _cmd_enumerate(a, out):
    if a.level < 1:
        raise UsageError("--level must be >= 1")
    levels = d_levels(a.level, a.budget)
    xs = levels[-1] if a.which == "X" else sorted(x for lv in levels for x in lv)
    for x in xs:
        _emit(format_rational(x), out)
    return 0


def _cmd_counts(a, out):
    _emit("n,X,Y,Z", out)
    for n in range(1, a.upto + 1):
        c = counts(n)
        _emit(f"{c.n},{c.X},{c.Y},{c.Z}", out)
    return 0


def _cmd_ratios(a, out):
    _emit("ratio,value,limit,distance_at_most", out)
    for r in ratio_report(a.at):
        _emit(f"{r.name},{format_fixed(r.value, a.digits)},{to_decimal(r.limit, a.digits)},"
              f"{format_fixed(r.distance.hi, a.digits, 'up')}", out)
    return 0


def _cmd_verify(a, out):
    failed = 0
    total = 0
    for r in run_suite(a.suite, Settings(max_level=a.max_level, seed=a.seed)):
        total += 1
        failed += not r.passed
        _emit(r.line(), out)
        out.flush()
    _emit(f"{total - failed} passed, {failed} failed", out)
    return 1 if failed else 0


def _write_table(text: str, dest, out):
    if dest:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def _cmd_convergence(a, out):
    if a.grid_level < 1 or a.min_n < 1 or a.max_n < a.min_n:
        raise UsageError("need 1 <= --min-n <= --max-n and --grid-level >= 1")
    grid = sorted(x for lv in d_levels(a.grid_level) for x in lv)
    rows = convergence_table(a.max_n, grid, min_n=a.min_n)
    _write_table(export_csv(CONVERGENCE_HEADER, convergence_records(rows, a.digits)), a.out, out)
    return 0


def _cmd_ratio_audit(a, out):
    rows = [r for level in range(a.max_level + 1) for r in mediant_ratio_audit(level)]
    _write_table(export_csv(RATIO_HEADER, ratio_records(rows)), a.out, out)
    return 0


def _cmd_probe(a, out):
    xs = [_rational(t) for t in a.x] if a.x else random_rationals(a.count, a.seed)
    steps = [_rational(h) for h in a.steps] if a.steps else None
    rows = [r for x in xs for r in derivative_probe(x, steps)]
    _write_table(export_csv(PROBE_HEADER, probe_records(rows, a.digits)), a.out, out)
    return 0


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = build_parser().parse_args(argv)
        cmd = a.command
        if cmd == "expand":
            return _cmd_expand(a, out)
        if cmd == "convert":
            return _cmd_convert(a, out)
        if cmd == "eval":
            return _cmd_eval(a, out)
        if cmd == "eval-f":
            return _cmd_eval_f(a, out, "F", F_exact)
        if cmd == "eval-f0":
            return _cmd_eval_f(a, out, "F0", F0_exact)
        if cmd == "enumerate":
            return _cmd_enumerate(a, out)
        if cmd == "counts":
            return _cmd_counts(a, out)
        if cmd == "ratios":
            return _cmd_ratios(a, out)
        if cmd == "verify":
            return _cmd_verify(a, out)
        if cmd == "convergence":
            return _cmd_convergence(a, out)
        if cmd == "ratio-audit":
            return _cmd_ratio_audit(a, out)
        if cmd == "derivative-probe":
            return _cmd_probe(a, out)
        raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover
    except (UsageError, OddCFError) as exc:
        err.write(f"error: {exc.kind}: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"error: io: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
