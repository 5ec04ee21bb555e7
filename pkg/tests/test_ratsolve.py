import random

import pytest

from paramgalois.harness import HarnessConfig, random_instance
from paramgalois.linode import LinDiffOp, apply_operator, lr_operator
from paramgalois.params import ParamField
from paramgalois.parser import parse_expression
from paramgalois.ratfunc import RatFunc
from paramgalois.ratsolve import (
    in_span,
    certified_agreement,
    oracle_rational_solutions,
    parametric_rational_solutions,
    rational_solutions,
    solution_bounds,
    spaces_agree,
)


def _op(F, *coeffs):
    return LinDiffOp(tuple(parse_expression(c, F) for c in coeffs))


def test_first_derivative_with_polynomial_rhs():
    F = ParamField(())
    sol = rational_solutions(_op(F, "0", "1"), parse_expression("2*z", F))
    assert sol.particular == parse_expression("z^2", F)
    assert sol.kernel == (RatFunc.const(F, 1),)


def test_third_derivative_kernel():
    F = ParamField(())
    sol = rational_solutions(_op(F, "0", "0", "0", "1"), RatFunc.zero_of(F))
    z = RatFunc.z(F)
    assert len(sol.kernel) == 3
    assert all(in_span(sol.kernel, y) for y in (RatFunc.const(F, 1), z, z * z))


def test_no_rational_solution():
    F = ParamField(())
    # y' = 1/z has only logarithmic solutions
    sol = rational_solutions(_op(F, "0", "1"), parse_expression("1/z", F))
    assert not sol.has_solution


def test_pole_order_comes_from_rhs_after_normalization():
    F = ParamField(("t",))
    L = _op(F, "-4", "z-t", "(z-t)^2")
    y = parse_expression("(z+1)/(z-t)^3", F)
    sol = rational_solutions(L, apply_operator(L, y))
    assert sol.has_solution
    assert in_span(sol.kernel, sol.particular - y)


def test_bessel_symmetric_square_has_no_rational_kernel():
    F = ParamField(("t",))
    r = parse_expression("(4*t^2-1)/(4*z^2)-1", F)
    L = lr_operator(r)
    fast = rational_solutions(L, RatFunc.zero_of(F))
    assert fast.kernel == ()
    assert spaces_agree(fast, oracle_rational_solutions(L, RatFunc.zero_of(F), 6))


def test_parametric_solution_for_cubic_potential():
    F = ParamField(("t0", "t1", "t2"))
    r = parse_expression("z^3+t2*z^2+t1*z+t0", F)
    L = lr_operator(r)
    sol = parametric_rational_solutions(L, [-r.diff_param(i) for i in range(3)])
    assert sol.dim == 1
    (a, b), = sol.pairs
    t0, t1, t2 = F.params()
    # a is proportional to (t1, 2 t2, 3) and b is constant
    assert a[0] * 3 == a[2] * t1 and a[1] * 3 == a[2] * 2 * t2
    assert b.is_constant()
    total = sum((-r.diff_param(i) * a[i] for i in range(3)), RatFunc.zero_of(F))
    assert apply_operator(L, b) == total


def test_bounds_for_generic_exponents_are_flagged():
    F = ParamField(("t",))
    r = parse_expression("(4*t^2-1)/(4*z^2)-1", F)
    b = solution_bounds(lr_operator(r), [])
    assert any("depend on parameters" in note for note in b.assumptions)


@pytest.mark.parametrize("seed", range(12))
def test_agrees_with_oracle_on_small_random_instances(seed):
    cfg = HarnessConfig(max_params=1, max_pole_order=2, max_degree=3)
    inst = random_instance(random.Random(seed), cfg)
    fast = rational_solutions(inst.op, inst.rhs)
    ok, _ = certified_agreement(inst.op, inst.rhs, fast, 6, seed=seed)
    assert ok, inst.describe()
    for y in fast.kernel:
        assert not apply_operator(inst.op, y)
    if fast.has_solution:
        assert apply_operator(inst.op, fast.particular) == inst.rhs


def test_in_span():
    F = ParamField(("t",))
    z = RatFunc.z(F)
    t = F.param("t")
    assert in_span([z, 1 / z], z * t + 1 / z)
    assert not in_span([z], z * z)
