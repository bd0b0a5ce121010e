from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def reduced(max_den: int, lo: int = 1):
    """All reduced p/q in [0, 1] with lo <= q <= max_den, sorted."""
    return sorted({Fraction(p, q) for q in range(lo, max_den + 1) for p in range(q + 1)})


@pytest.fixture(scope="session")
def levels14():
    from oddcf.tree import d_levels

    return d_levels(17)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.rstrip("ab")), k)):
        terminalreporter.write_line(ACCEPTANCE[key])
