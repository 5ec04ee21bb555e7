from fractions import Fraction

from hypothesis import given

from paramgalois.linode import (
    INFINITY,
    LinDiffOp,
    apply_operator,
    constant_rational_roots,
    indicial_data,
    lr_operator,
    singularities,
    to_normal_form,
)
from paramgalois.params import ParamField
from paramgalois.parser import parse_expression
from paramgalois.ratfunc import RatFunc
from paramgalois.upoly import UPoly

from conftest import FIELD, base_elems, ratfuncs


def _nu_poly(F, *coeffs):
    return UPoly([F.coerce(c) if not isinstance(c, str) else parse_expression(c, F).constant_value()
                  for c in coeffs], F.zero)


@given(ratfuncs(), ratfuncs(), base_elems())
def test_operator_is_linear(y1, y2, c):
    L = LinDiffOp((RatFunc.z(FIELD), RatFunc.const(FIELD, 1), RatFunc.const(FIELD, 1)))
    assert apply_operator(L, y1 * c + y2) == apply_operator(L, y1) * c + apply_operator(L, y2)


def test_symmetric_square_operator_on_products():
    # y'' = (2/z^2) y has solutions z^2 and 1/z; their products lie in ker L
    F = ParamField(())
    r = parse_expression("2/z^2", F)
    L = lr_operator(r)
    z = RatFunc.z(F)
    for b in (z ** 4, z, z ** -2):
        assert not apply_operator(L, b)


def test_bessel_indicial_at_zero():
    F = ParamField(("t",))
    r = parse_expression("(4*t^2-1)/(4*z^2)-1", F)
    poly, mu = indicial_data(lr_operator(r), F.zero)
    # -1/2 (nu+1) ((nu+1)^2 - 4 t^2)
    expected = _nu_poly(F, "(4*t^2-1)/2", "(4*t^2-3)/2", Fraction(-3, 2), Fraction(-1, 2))
    assert poly == expected
    assert mu == -3
    roots, generic = constant_rational_roots(poly)
    assert roots == [-1]
    assert generic


def test_bessel_indicial_at_infinity():
    F = ParamField(("t",))
    r = parse_expression("(4*t^2-1)/(4*z^2)-1", F)
    poly, delta = indicial_data(lr_operator(r), INFINITY)
    assert poly == _nu_poly(F, 0, 2)
    assert delta == -1
    assert constant_rational_roots(poly) == ([0], False)


def test_harmonic_indicial_at_infinity():
    F = ParamField(("t",))
    r = parse_expression("z^2/4+t", F)
    poly, delta = indicial_data(lr_operator(r), INFINITY)
    assert poly == _nu_poly(F, Fraction(-1, 2), Fraction(-1, 2))
    assert delta == 1


def test_euler_indicial_roots():
    F = ParamField(())
    L = LinDiffOp(tuple(parse_expression(c, F) for c in ("-6", "2*z", "z^2")))
    poly, _ = indicial_data(L, F.zero)
    # local exponents 2 and -3, ansatz z^(-nu)
    assert constant_rational_roots(poly) == ([-2, 3], False)


def test_singularities():
    F = ParamField(("t",))
    r = parse_expression("t/z-3/(16*z^2)", F)
    rep = singularities(r)
    assert [(p.location, p.order) for p in rep.poles] == [(F.zero, 2)]
    assert rep.order_at_infinity == 1


def test_normal_form():
    F = ParamField(())
    r, shift = to_normal_form(RatFunc.z(F), RatFunc.const(F, 1))
    assert r == parse_expression("z^2/4 - 1/2", F)
    assert shift == parse_expression("-z/2", F)
