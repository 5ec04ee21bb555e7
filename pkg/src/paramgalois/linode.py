"""Linear differential operators in d/dz, normal forms, local exponents."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ
from sympy.polys.rings import ring as sparse_ring

from .errors import UnsupportedDenominator
from .factor import factor_roots, irreducible_factors
from .ratfunc import RatFunc
from .series import laurent_at, laurent_at_infinity
from .upoly import UPoly

__all__ = [
    "LinDiffOp",
    "INFINITY",
    "Pole",
    "SingularityReport",
    "lr_operator",
    "to_normal_form",
    "singularities",
    "apply_operator",
    "indicial_polynomial",
    "indicial_data",
    "constant_rational_roots",
]

INFINITY = "infinity"


@dataclass(frozen=True)
class LinDiffOp:
    """sum coeffs[i] * (d/dz)**i with RatFunc coefficients."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            raise ValueError("operator must have a nonzero leading coefficient")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def field(self):
        return self.coeffs[0].field

    def __call__(self, y):
        return apply_operator(self, y)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c})*d_z^{i}" if i else f"({c})")
        return " + ".join(reversed(parts))


def lr_operator(r):
    """b -> 1/2 b''' - 2 r b' - r' b, the certificate operator for r."""
    field = r.field
    half = RatFunc.const(field, Fraction(1, 2))
    return LinDiffOp((-r.diff(), r * (-2), RatFunc.zero_of(field), half))


def first_order(a, field):
    """d/dz + a."""
    return LinDiffOp((a, RatFunc.const(field, 1)))


def to_normal_form(a, b):
    """y'' + a y' + b y = 0  ->  (r, -a/2) with v'' = r v and y = v exp(int -a/2)."""
    r = a * a / 4 + a.diff() / 2 - b
    return r, -a / 2


def apply_operator(L, y):
    total = RatFunc.zero_of(y.field)
    deriv = y
    for i, c in enumerate(L.coeffs):
        if i:
            deriv = deriv.diff()
        if c and deriv:
            total = total + c * deriv
    return total


@dataclass(frozen=True)
class Pole:
    location: object  # ParamElem, or None when the factor resists resolution
    factor: UPoly
    order: int


@dataclass(frozen=True)
class SingularityReport:
    poles: tuple
    order_at_infinity: object  # int, or None for the zero function
    unresolved: tuple = ()


def singularities(x, resolve=True):
    """Finite poles with orders and the order of x at infinity."""
    poles = []
    unresolved = []
    for factor, m in irreducible_factors(x.den):
        if not resolve:
            poles.append(Pole(None, factor, m))
            continue
        try:
            roots = factor_roots(factor)
        except UnsupportedDenominator:
            poles.append(Pole(None, factor, m))
            unresolved.append(factor)
            continue
        for alpha in roots:
            poles.append(Pole(alpha, factor, m))
    return SingularityReport(tuple(poles), x.order_at_infinity(), tuple(unresolved))


def _falling(field, i, sign):
    """prod_{j<i} (sign*nu - j) as a UPoly in nu."""
    zero = field.zero
    p = UPoly([field.one], zero)
    for j in range(i):
        p = p * UPoly([field.const(-j), field.const(sign)], zero)
    return p


def indicial_data(L, point):
    """(indicial polynomial in nu, shift).

    At a finite point the ansatz is (z - point)**(-nu); unless nu is a root,
    L of it has a pole of order exactly nu - shift, so a rhs pole of order k
    forces nu = k + shift.  At infinity the ansatz is z**nu and L of it has
    degree exactly nu + shift away from the roots.
    """
    field = L.field
    zero = field.zero
    best = None
    terms = []
    for i, c in enumerate(L.coeffs):
        if not c:
            continue
        if point == INFINITY:
            s = laurent_at_infinity(c, 1)
            key = -s.val - i
            better = best is None or key > best
        else:
            s = laurent_at(c, point, 1)
            key = s.val - i
            better = best is None or key < best
        if better:
            best, terms = key, [(i, s.coeffs[0])]
        elif key == best:
            terms.append((i, s.coeffs[0]))
    sign = 1 if point == INFINITY else -1
    poly = UPoly([], zero)
    for i, lead in terms:
        poly = poly + _falling(field, i, sign).scale(lead)
    return poly, best


def indicial_polynomial(L, point):
    return indicial_data(L, point)[0]


_NU_RING = sparse_ring("nu", QQ)[0]


def constant_rational_roots(poly):
    """Rational roots of ``poly`` (in nu) that do not depend on the parameters.

    Returns (sorted distinct roots, generic) where ``generic`` is True when
    some roots depend on parameters or are irrational; those are treated as
    non-integers under generic-parameter semantics.
    """
    if poly.degree < 1:
        return [], False
    coords = [c.coords() for c in poly.coeffs]
    nslots = len(coords[0])
    qpolys = []
    for s in range(nslots):
        entries = [coords[k][s] for k in range(len(coords))]
        if all(not e for e in entries):
            continue
        lcm_den = None
        for e in entries:
            if e:
                lcm_den = e.denom if lcm_den is None else lcm_den.lcm(e.denom)
        by_mon = {}
        for k, e in enumerate(entries):
            if not e:
                continue
            scaled = e.numer * lcm_den.exquo(e.denom)
            for monom, coeff in scaled.terms():
                by_mon.setdefault(monom, {})[(k,)] = coeff
        for part in by_mon.values():
            qpolys.append(_NU_RING.from_dict(part))
    g = qpolys[0]
    for q in qpolys[1:]:
        g = g.gcd(q)
    roots = []
    if g.degree() >= 1:
        _, facs = g.factor_list()
        for f, _m in facs:
            if f.degree() == 1:
                a, b = f.coeff(_NU_RING.gens[0]), f.coeff(1)
                roots.append(-Fraction(int(b.numerator), int(b.denominator)) / Fraction(int(a.numerator), int(a.denominator)))
    generic = g.degree() < poly.degree or len(roots) < g.degree()
    return sorted(set(roots)), generic
