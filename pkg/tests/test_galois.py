import pytest

from paramgalois.errors import InvalidCertificate
from paramgalois.galois import (
    apply_relation,
    assemble_group,
    certificate_residual,
    companion,
    integrability_space,
    multiplicative_group,
    product_form,
    reconstruct_connection,
    span_relations,
    verify_integrability,
)
from paramgalois.kovacic import classify
from paramgalois.params import Derivation, ParamField
from paramgalois.parser import parse_expression, parse_param
from paramgalois.ratfunc import RatFunc


def _setup(text, names=("t",)):
    F = ParamField(names)
    r = parse_expression(text, F)
    return F, r, assemble_group(classify(r), r)


def _wronskian_is_constant(f1, f2):
    # W = y1 y2 (f2 - f1) with y_i = exp(int f_i); dW/dz = 0 iff this vanishes
    d = f2 - f1
    return not (f1 + f2 + d.diff() / d)


def test_bessel_is_dense_full():
    _, _, G = _setup("(4*t^2-1)/(4*z^2)-1")
    assert G.tag == "dense"
    assert G.dspace.dim == 0
    assert G.group_string() == "SL2_full"


def test_cubic_potential_integrability_space():
    F, r, G = _setup("z^3+t2*z^2+t1*z+t0", ("t0", "t1", "t2"))
    assert G.group_string() == "SL2_constants"
    (d, b), = G.dspace.basis
    t0, t1, t2 = F.params()
    expected = (t1, 2 * t2, F.const(3))
    ratio = d.coeffs[2] / 3
    assert all(c == e * ratio for c, e in zip(d.coeffs, expected))
    assert b.is_constant()
    conn = G.connections[0]
    assert all(ok for _, ok in verify_integrability([(Derivation.z(F), companion(r)), (d, conn)]))
    assert not conn.trace()


def test_example4_diagonal_group():
    F, r, G = _setup("t/z^2")
    assert G.tag == "diagonal"
    w = F.sqrt_in_tower(4 * F.param("t") + 1)
    assert w is not None
    assert set(G.M.exponents) == {(1 + w) / 2, (1 - w) / 2}
    assert G.A.tag == "zero"
    assert G.A.h == RatFunc.z(F) * (-1 / w)
    (rel,), = [G.M.relations]
    # the relation is a parameter-field multiple of d_t(w * L_t) = w * d_t L_t + w' * L_t
    z0, z1 = ((0,), (1,))
    ratio = rel[(0, z1)] / w
    assert rel[(0, z0)] == w.diff(0) * ratio
    f1, f2 = (s.f for s in G.solutions)
    assert _wronskian_is_constant(f1, f2)
    assert all(G.checks.values())


def test_example4_relation_annihilates_group_parameters():
    F, r, G = _setup("t/z^2")
    rel = G.M.relations[0]
    w = F.sqrt_in_tower(4 * F.param("t") + 1)
    # alpha = exp(c * beta(t)): L_t = c * beta'(t) for a constant c
    for c in (1, 3, -2):
        beta = (1 + w) / 2
        assert not apply_relation(rel, [beta.diff(0) * c])
    assert apply_relation(rel, [F.param("t")])


def test_example5_dihedral():
    F, r, G = _setup("t/z-3/(16*z^2)")
    assert G.tag == "dihedral"
    assert G.M.tag == "constants"
    assert G.M.relation_strings(F) == ["L_t = 0"]
    assert all(G.checks.values())


@pytest.mark.parametrize(
    "text, tag, mtag, atag",
    [
        ("0", "trivial", "trivial", "zero"),
        ("2/z^2", "trivial", "trivial", "zero"),
        ("-1/(4*z^2)", "borel", "finite-cyclic", "full-constants"),
        ("1", "diagonal", "constants", "zero"),
        ("t^2/z^4", "diagonal", "constants", "zero"),
    ],
)
def test_case_one_groups(text, tag, mtag, atag):
    _, _, G = _setup(text)
    assert G.tag == tag
    assert G.M.tag == mtag
    assert G.A.tag == atag
    assert all(G.checks.values())


def test_finite_cyclic_order():
    _, _, G = _setup("-1/(4*z^2)")
    assert G.M.q == 2
    assert G.M.relation_strings(None) == ["alpha^2 = 1"]


def test_product_form():
    F = ParamField(("t",))
    f = parse_expression("t/z + 1/(z-1) + 2*z", F)
    pf = product_form(f)
    assert pf.log_derivative() == f
    assert pf.Q == parse_expression("z^2", F)
    assert not pf.is_rational()


def test_multiplicative_group_from_exponents():
    F = ParamField(("t",))
    pf = product_form(parse_expression("1/(2*z)", F))
    assert multiplicative_group(pf).tag == "finite-cyclic"
    pf = product_form(parse_expression("t/z", F))
    M = multiplicative_group(pf)
    assert M.tag == "exp-span"
    # beta = t: L_t constant, relation d_t(L_t) = 0
    assert M.relation_strings(F) == ["d_t(L_t) = 0"]


def test_span_relations_two_parameters():
    F = ParamField(("t", "s"))
    t, s = F.params()
    rels = span_relations(F, [(s, t)])  # gradient of t*s
    for c in (1, 5):
        assert all(not apply_relation(rel, [s * c, t * c]) for rel in rels)
    assert any(apply_relation(rel, [s, s]) for rel in rels)


def test_certificate_identity_and_linearity():
    F = ParamField(("t0", "t1", "t2"))
    r = parse_expression("z^3+t2*z^2+t1*z+t0", F)
    space = integrability_space(r)
    for d, b in space.basis:
        assert not certificate_residual(r, d, b)
        # the residual is linear in (d, b) jointly
        scaled = Derivation(F, [c * F.param("t1") for c in d.coeffs])
        assert not certificate_residual(r, scaled, b * F.param("t1"))


def test_reconstruct_connection_rejects_bad_certificate():
    F = ParamField(("t",))
    r = parse_expression("z^2/4+t", F)
    with pytest.raises(InvalidCertificate):
        reconstruct_connection(r, Derivation.param(F, 0), RatFunc.const(F, 1))


def _system(F, r, B):
    return [(Derivation.z(F), companion(r)), (Derivation.param(F, 0), B)]


def _matrix(F, rows):
    return tuple(tuple(parse_expression(x, F) for x in row) for row in rows)


def test_example5_corrected_t_connection_is_integrable():
    # d_t y = (z/t) y' - y/(4t) on the solutions z^(1/4) exp(+-2 sqrt(t z))
    F = ParamField(("t",))
    r = parse_expression("t/z-3/(16*z^2)", F)
    B = _matrix(F, [["-1/(4*t)", "z/t"], ["1 - 3/(16*t*z)", "3/(4*t)"]])
    assert verify_integrability(_system(F, r, B)) == [((0, 1), True)]


def test_example5_trace_free_connection_from_integrability_space():
    F = ParamField(("t",))
    r = parse_expression("t/z-3/(16*z^2)", F)
    space = integrability_space(r)
    assert space.dim == 1
    d, b = space.basis[0]
    conn = reconstruct_connection(r, d, b)
    assert not conn.trace()
    assert verify_integrability(_system(F, r, conn.entries)[:1] + [(d, conn.entries)]) == [
        ((0, 1), True)]


def test_scalar_shift_preserves_integrability():
    F = ParamField(("t",))
    r = parse_expression("t/z-3/(16*z^2)", F)
    B = _matrix(F, [["-1/(4*t)", "z/t"], ["1 - 3/(16*t*z)", "3/(4*t)"]])
    lam = parse_expression("t^2", F)
    shifted = ((B[0][0] + lam, B[0][1]), (B[1][0], B[1][1] + lam))
    assert verify_integrability(_system(F, r, shifted)) == [((0, 1), True)]


def test_non_commuting_derivations_fail():
    F = ParamField(("t", "s"))
    zero = RatFunc.zero_of(F)
    M = ((zero, zero), (zero, zero))
    d1 = Derivation(F, [F.param("s"), F.zero])
    d2 = Derivation(F, [F.zero, F.one])
    assert verify_integrability([(d1, M), (d2, M)]) == [((0, 1), False)]


def test_zero_certificate_gives_zero_connection():
    F = ParamField(("t",))
    r = parse_expression("z^2+1", F)
    conn = reconstruct_connection(r, Derivation.param(F, 0), RatFunc.zero_of(F))
    assert all(not x for row in conn.entries for x in row)


def test_bessel_with_zero_t_matrix_is_not_integrable():
    F = ParamField(("t",))
    r = parse_expression("(4*t^2-1)/(4*z^2)-1", F)
    zero = RatFunc.zero_of(F)
    assert verify_integrability(_system(F, r, ((zero, zero), (zero, zero)))) == [((0, 1), False)]


def test_singleton_system_is_vacuously_integrable():
    F = ParamField(("t",))
    assert verify_integrability([(Derivation.z(F), companion(parse_expression("z", F)))]) == []


@pytest.mark.parametrize("f, Q", [("1", "z"), ("t/z^2", "-t/z")])
def test_product_form_exponential_part(f, Q):
    F = ParamField(("t",))
    pf = product_form(parse_expression(f, F))
    assert pf.pairs == ()
    assert pf.Q == parse_expression(Q, F)
