from hypothesis import given, settings

from paramgalois.integrate import hermite_reduce, integrate_rational
from paramgalois.params import ParamField
from paramgalois.parser import parse_expression
from paramgalois.ratfunc import RatFunc

from conftest import ratfuncs


def test_hermite_reduction_splits_off_rational_part():
    F = ParamField(("t",))
    x = parse_expression("1/(z-t)^3 + 2/(z+1)", F)
    g, h = hermite_reduce(x)
    assert g.diff() + h == x
    assert g == parse_expression("-1/(2*(z-t)^2)", F)
    assert h == parse_expression("2/(z+1)", F)


def test_integral_with_logarithms():
    F = ParamField(("t",))
    x = parse_expression("1/(z^2-t) + z", F)
    res = integrate_rational(x)
    assert res.derivative() == x
    assert len(res.logs) == 2


def test_polynomial_integral():
    F = ParamField(())
    res = integrate_rational(parse_expression("3*z^2+1", F))
    assert res.rational == parse_expression("z^3+z", F)
    assert not res.logs


@settings(max_examples=15)
@given(ratfuncs())
def test_hermite_identity(x):
    g, h = hermite_reduce(x)
    assert g.diff() + h == x
