from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from paramgalois.params import ParamField
from paramgalois.ratfunc import RatFunc
from paramgalois.upoly import UPoly

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

FIELD = ParamField(("t", "s"))

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def base_elems(draw, field=FIELD, nonzero=False, fractions=True):
    """Small elements of Q(t, s); polynomial in t, s unless ``fractions``."""
    t, s = field.params()

    def poly():
        a, b, c, d = (draw(small_q) for _ in range(4))
        return field.const(a) + t * b + s * c + t * t * d

    num = poly()
    den = field.const(draw(st.integers(1, 3)))
    if fractions:
        den = den + t * draw(st.integers(0, 2))
    x = num / den
    if nonzero and not x:
        x = field.one
    return x


@st.composite
def upolys(draw, field=FIELD, max_degree=3):
    n = draw(st.integers(0, max_degree + 1))
    return UPoly([draw(base_elems(field, fractions=False)) for _ in range(n)], field.zero)


@st.composite
def ratfuncs(draw, field=FIELD):
    num = draw(upolys(field))
    den = draw(upolys(field, 2))
    if not den:
        den = UPoly([field.one], field.zero)
    return RatFunc(field, num, den)


@pytest.fixture
def field_t():
    return ParamField(("t",))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
