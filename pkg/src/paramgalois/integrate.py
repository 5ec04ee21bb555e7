"""Integration of rational functions: Hermite reduction plus logarithms."""

from __future__ import annotations

from dataclasses import dataclass

from .factor import factor_roots, irreducible_factors
from .ratfunc import RatFunc
from .upoly import UPoly, gcd, solve_bezout

__all__ = ["hermite_reduce", "integrate_rational", "RationalIntegral"]


def _integrate_poly(p):
    zero = p.zero
    coeffs = [zero] + [c / (i + 1) for i, c in enumerate(p.coeffs)]
    return UPoly(coeffs, zero)


def hermite_reduce(x):
    """(g, h) with x = g' + h and h having a square-free denominator."""
    field = x.field
    poly, A = x.num.divmod(x.den)
    D = x.den
    g = RatFunc.from_poly(field, _integrate_poly(poly))
    if not A:
        return g, RatFunc.zero_of(field)
    Dm = gcd(D, D.deriv())
    Ds = D.exact_div(Dm)
    while Dm.degree > 0:
        Dm2 = gcd(Dm, Dm.deriv())
        Dms = Dm.exact_div(Dm2)
        lhs = -(Ds * Dm.deriv()).exact_div(Dm)
        B, C = solve_bezout(lhs, Dms, A)
        A = C - (B.deriv() * Ds).exact_div(Dms)
        g = g + RatFunc(field, B, Dm)
        Dm = Dm2
    return g, RatFunc(field, A, Ds)


@dataclass(frozen=True)
class RationalIntegral:
    """rational + sum c * log(z - alpha)."""

    rational: RatFunc
    logs: tuple  # ((alpha, c), ...)

    def derivative(self):
        field = self.rational.field
        total = self.rational.diff()
        for alpha, c in self.logs:
            lin = RatFunc.from_poly(field, UPoly([-alpha, field.one], field.zero))
            total = total + RatFunc.const(field, c) / lin
        return total


def integrate_rational(x):
    """Antiderivative of x; logarithmic parts need resolvable denominators."""
    g, h = hermite_reduce(x)
    logs = []
    if h:
        dden = h.den.deriv()
        for factor, _ in irreducible_factors(h.den):
            for alpha in factor_roots(factor):
                c = h.num(alpha) / dden(alpha)
                if c:
                    logs.append((alpha, c))
    return RationalIntegral(g, tuple(logs))
