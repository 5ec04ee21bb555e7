"""Factoring denominators in z and locating poles over the square-root tower.

Polynomials whose coefficients lie in Q(t) are factored by sympy over
Q[z, t]; tower-level polynomials only get square-free decomposition and
quadratic splitting.  A pole location is available when its irreducible
factor has degree at most two (one square root per factor).
"""

from __future__ import annotations

from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import ring as sparse_ring

from .errors import UnsupportedDenominator
from .series import laurent_at
from .upoly import UPoly, squarefree_decomposition

__all__ = [
    "multivariate_gcd",
    "irreducible_factors",
    "factor_roots",
    "pole_locations",
    "partial_fractions",
    "recombine",
]


def zring(field):
    cached = getattr(field, "_zring_cache", None)
    if cached is None:
        gens = ["__z"] + list(reversed(field.names))
        cached = sparse_ring(gens, QQ, lex)[0]
        field._zring_cache = cached
    return cached


def scaled_zt(poly):
    """(P, L) with P in Q[z, t] and poly = P / L, L in Q[t]."""
    field = poly.zero.field
    R = zring(field)
    if not poly.coeffs:
        return R.zero, field.base.ring.one
    dens = [c.raw.denom for c in poly.coeffs]
    L = dens[0]
    for d in dens[1:]:
        if d != L:
            L = L.lcm(d)
    terms = {}
    for k, c in enumerate(poly.coeffs):
        scaled = c.raw.numer if c.raw.denom == L else c.raw.numer * L.exquo(c.raw.denom)
        for monom, coeff in scaled.terms():
            terms[(k,) + tuple(monom)] = coeff
    return R.from_dict(terms), L


def _to_sympy(poly):
    return scaled_zt(poly)[0]


def lift_t(R, p):
    return R.from_dict({(0,) + tuple(m): c for m, c in p.terms()})


def zt_pair(num, den):
    """(P, Q) in Q[z, t] with num/den = P/Q, for base-level coefficients."""
    R = zring(num.zero.field)
    P, Ln = scaled_zt(num)
    Q, Ld = scaled_zt(den)
    if Ld != Ln:
        P = P * lift_t(R, Ld)
        Q = Q * lift_t(R, Ln)
    return P, Q


def _z_coeffs(p, field):
    base_ring = field.base.ring
    by_deg = {}
    for monom, coeff in p.terms():
        by_deg.setdefault(monom[0], {})[tuple(monom[1:])] = coeff
    deg = max(by_deg)
    return [base_ring.from_dict(by_deg[k]) if k in by_deg else base_ring.zero
            for k in range(deg + 1)]


def from_zt_pair(P, Q, field, coprime=False):
    """Reduced (num, den) UPolys, den monic in z, for P/Q with Q != 0."""
    zero = field.zero
    if not P:
        return UPoly([], zero), UPoly([field.one], zero)
    if not coprime:
        P, Q = P.cancel(Q)
    qs = _z_coeffs(Q, field)
    lc = field.base(qs[-1])
    num = UPoly([field.from_base(field.base(c) / lc) for c in _z_coeffs(P, field)], zero)
    den = UPoly([field.from_base(field.base(c) / lc) for c in qs], zero)
    return num, den


def _from_sympy(p, field):
    base_ring = field.base.ring
    by_deg = {}
    for monom, coeff in p.terms():
        by_deg.setdefault(monom[0], {})[tuple(monom[1:])] = coeff
    deg = max(by_deg)
    coeffs = []
    for k in range(deg + 1):
        part = by_deg.get(k)
        if part is None:
            coeffs.append(field.zero)
        else:
            coeffs.append(field.from_base(field.base(base_ring.from_dict(part))))
    return UPoly(coeffs, field.zero).monic()


def monic_from_zt(p, field):
    """Monic UPoly over Q(t) from a nonzero polynomial in Q[z, t]."""
    return _from_sympy(p, field)


def multivariate_gcd(a, b):
    """gcd of Q(t)-coefficient polynomials computed in Q[z, t]."""
    g = _to_sympy(a).gcd(_to_sympy(b))
    if g.degree(0) < 1:
        return UPoly([a.one], a.zero)
    return _from_sympy(g, a.zero.field)


def _sort_key(item):
    from .forms import format_upoly

    poly, mult = item
    return (poly.degree, format_upoly(poly, "z"), mult)


def irreducible_factors(poly):
    """Monic factors with multiplicities, deterministic order.

    Factors of Q(t)-coefficient polynomials are irreducible over Q(t); over
    the tower, quadratic square-free parts are split when possible and
    higher-degree square-free parts are returned as they are.
    """
    if poly.degree < 1:
        return []
    field = poly.zero.field
    if all(c.level == 0 for c in poly.coeffs):
        _, facs = _to_sympy(poly).factor_list()
        out = []
        for f, m in facs:
            if f.degree(0) < 1:
                continue
            out.append((_from_sympy(f, field), m))
        return sorted(out, key=_sort_key)
    out = []
    for part, m in squarefree_decomposition(poly):
        for f in _split_quadratic(part):
            out.append((f, m))
    return sorted(out, key=_sort_key)


def _split_quadratic(part):
    if part.degree != 2:
        return [part]
    field = part.zero.field
    p, q = part.coeff(1), part.coeff(0)
    half_p = p / 2
    disc = half_p * half_p - q
    s = field.sqrt_in_tower(disc)
    if s is None:
        return [part]
    zero = field.zero
    return [UPoly([half_p + s, field.one], zero), UPoly([half_p - s, field.one], zero)]


def factor_roots(factor):
    """Roots of a monic irreducible factor, adjoining one square root if needed."""
    field = factor.zero.field
    if factor.degree == 1:
        return [-factor.coeff(0)]
    if factor.degree == 2:
        p, q = factor.coeff(1), factor.coeff(0)
        half_p = p / 2
        s = field.sqrt(half_p * half_p - q)
        return [-half_p + s, -half_p - s]
    from .forms import format_upoly

    raise UnsupportedDenominator(format_upoly(factor, "z"))


def pole_locations(poly):
    """[(root, multiplicity, factor)] for every root of ``poly``."""
    out = []
    for factor, m in irreducible_factors(poly):
        for alpha in factor_roots(factor):
            out.append((alpha, m, factor))
    return out


def partial_fractions(x):
    """(polynomial part, [(alpha, k, c)]) with x = poly + sum c/(z - alpha)**k."""
    poly = x.num // x.den
    terms = []
    for alpha, m, _ in pole_locations(x.den):
        series = laurent_at(x, alpha, m)
        for k in range(1, m + 1):
            c = series.coeff(-k)
            if c:
                terms.append((alpha, k, c))
    return poly, terms


def recombine(field, poly, terms):
    from .ratfunc import RatFunc

    total = RatFunc.from_poly(field, poly)
    for alpha, k, c in terms:
        lin = RatFunc.from_poly(field, UPoly([-alpha, field.one], field.zero))
        total = total + RatFunc.const(field, c) / lin ** k
    return total
