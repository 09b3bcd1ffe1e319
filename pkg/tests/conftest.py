import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from almostnov.bars import STRICT, WEAK, Bar, BarModule
from almostnov.exponents import INF, ExponentGroup
from almostnov.novikov import QQ, Field, NovikovElement, Precision

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"
FULL = ExponentGroup.full()
F5 = Field(5)


@pytest.fixture
def fixtures():
    return FIXTURES


def quarter(lo=0, hi=16):
    """Multiples of 1/4 in [lo/4, hi/4]."""
    return st.integers(lo, hi).map(lambda k: Fraction(k, 4))


def coefficients(field=QQ):
    if field.p:
        return st.integers(1, field.p - 1)
    return st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda x: x != 0)


@st.composite
def elements(draw, field=QQ, precision=Precision.weak(6), max_terms=4, group=FULL):
    n = draw(st.integers(0, max_terms))
    terms = [(draw(quarter(0, 24)), draw(coefficients(field))) for _ in range(n)]
    return NovikovElement.build(terms, group, precision, field)


@st.composite
def bars(draw, group=FULL, shifts=quarter(0, 8)):
    length = draw(st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), INF]))
    shift = draw(shifts)
    degree = draw(st.integers(-1, 1))
    if length == 0:
        return Bar(0, WEAK, shift, degree)
    boundary = STRICT if length == INF else draw(st.sampled_from([STRICT, WEAK]))
    return Bar(length, boundary, shift, degree)


@st.composite
def bar_modules(draw, group=FULL, max_bars=4):
    return BarModule.of(draw(st.lists(bars(group), max_size=max_bars)), group)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in mod.REPORT:
            terminalreporter.write_line(line)
