from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from paramgalois.kovacic import (
    FiniteWitness,
    QuadraticMinPoly,
    RiccatiSolution,
    case1_search,
    classify,
    necessary_conditions,
)
from paramgalois.params import ParamField
from paramgalois.parser import parse_expression
from paramgalois.ratfunc import RatFunc


def _r(text, names=("t",)):
    F = ParamField(names)
    return parse_expression(text, F)


@pytest.mark.parametrize(
    "text, names",
    [
        ("(4*t^2-1)/(4*z^2)-1", ("t",)),
        ("z^2/4+t", ("t",)),
        ("z^3+t2*z^2+t1*z+t0", ("t0", "t1", "t2")),
        ("(1+t)*z-3/(16*z^2)", ("t",)),
    ],
)
def test_no_liouvillian_solutions(text, names):
    v = classify(_r(text, names))
    assert v.case == 4
    assert v.payload is None


@pytest.mark.parametrize(
    "text, f",
    [
        ("t/z^2", "(1 + sqrt(4*t + 1))/(2*z)"),
        ("1", "1"),
        ("0", "0"),
        ("2/z^2", "2/z"),
        ("-1/(4*z^2)", "1/(2*z)"),
        ("t^2/z^4", "(z + t)/z^2"),
    ],
)
def test_case_one(text, f):
    r = _r(text)
    v = classify(r)
    assert v.case == 1
    assert str(v.payload.f) == f
    assert v.payload.verify(r)
    assert not v.payload.residual(r)


def test_case_two_example():
    r = _r("t/z-3/(16*z^2)")
    v = classify(r)
    assert v.case == 2
    q = v.payload
    assert q.a == parse_expression("-1/(2*z)", r.field)
    assert q.b == parse_expression("1/(16*z^2) - t/z", r.field)
    assert q.verify(r)


def test_case_two_rejects_wrong_coefficients():
    r = _r("t/z-3/(16*z^2)")
    bad = QuadraticMinPoly(parse_expression("-1/z", r.field), parse_expression("1/z^2", r.field))
    assert not bad.verify(r)


def test_case_three_tetrahedral_hypergeometric():
    # normal form of the hypergeometric equation with a = 1/4, b = -1/12, c = 1/2
    r = _r("(-2/9*z^2 + 3/16*z - 3/16)/(z^4 - 2*z^3 + z^2)", ())
    v = classify(r)
    assert v.case == 3
    assert isinstance(v.payload, FiniteWitness)
    assert v.payload.n == 4
    assert v.payload.verify(r)


def test_necessary_conditions_trace():
    cases, trace = necessary_conditions(_r("z^3+t2*z^2+t1*z+t0", ("t0", "t1", "t2")))
    assert cases == ()
    assert len(trace) == 3


def test_riccati_solution_rejects_wrong_f():
    r = _r("t/z^2")
    assert not RiccatiSolution(parse_expression("1/z", r.field)).verify(r)


_F = ParamField(("t",))
_exps = st.sampled_from([Fraction(k, 2) for k in range(-4, 5)])


@settings(max_examples=12)
@given(_exps, _exps, st.integers(-2, 2), st.integers(-1, 1))
def test_riccati_identity_on_constructed_case_one(b1, b2, c0, c1):
    # r = f' + f^2 for a rational f, so case 1 must find some rational solution
    t = _F.param("t")
    z = RatFunc.z(_F)
    f = RatFunc.const(_F, b1) / z + RatFunc.const(_F, b2) / (z - t) + c0 + z * c1
    r = f.diff() + f * f
    v = classify(r)
    assert v.case == 1
    assert v.payload.verify(r)


def test_case1_search_returns_none_for_airy():
    assert case1_search(_r("z", ())) is None
