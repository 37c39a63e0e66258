from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from dyconvex import Dyadic, DyadicPoint

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}


def dyadics(max_mantissa=2**16, max_exp=8):
    return st.builds(Dyadic, st.integers(-max_mantissa, max_mantissa), st.integers(-max_exp, max_exp))


def small_dyadics(bound=8, max_exp=3):
    """Dyadics ``k / 2**e`` with ``|k / 2**e| <= bound``."""
    return st.integers(0, max_exp).flatmap(
        lambda e: st.integers(-bound * 2**e, bound * 2**e).map(lambda k: Dyadic(k, -e))
    )


def points(dim, elements=None):
    return st.lists(elements if elements is not None else small_dyadics(), min_size=dim, max_size=dim).map(DyadicPoint)


def frac(x) -> Fraction:
    return Fraction(x)


@pytest.fixture
def notdpol():
    return [DyadicPoint(p) for p in [(0, 0), (1, 3), (3, 0), (1, 1)]]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
