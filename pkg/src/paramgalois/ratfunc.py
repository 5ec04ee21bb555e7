"""Rational functions in z over the parameter field tower."""

from __future__ import annotations

from fractions import Fraction

from .params import Derivation, ParamElem, ParamField
from .factor import from_zt_pair, zt_pair
from .upoly import UPoly, gcd

__all__ = ["RatFunc", "normalize"]


class RatFunc:
    """num/den with den monic and gcd(num, den) = 1; zero is 0/1."""

    __slots__ = ("field", "num", "den", "_zt")

    def __init__(self, field, num, den, _reduced=False):
        self.field = field
        self._zt = None
        if not _reduced:
            num, den = _reduce(field, num, den)
        self.num = num
        self.den = den

    @classmethod
    def _from_pair(cls, field, P, Q, coprime=False):
        num, den = from_zt_pair(P, Q, field, coprime)
        return cls(field, num, den, _reduced=True)

    def _pair(self):
        """(P, Q) over Q[z, t] when every coefficient lies in Q(t), else None."""
        if self._zt is None:
            if all(c.level == 0 for c in self.num.coeffs) and all(
                    c.level == 0 for c in self.den.coeffs):
                self._zt = zt_pair(self.num, self.den)
            else:
                self._zt = False
        return self._zt or None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_poly(cls, field, poly):
        return cls(field, poly, UPoly([field.one], field.zero), _reduced=True)

    @classmethod
    def const(cls, field, c):
        c = field.coerce(c)
        return cls.from_poly(field, UPoly([c], field.zero))

    @classmethod
    def z(cls, field):
        return cls.from_poly(field, UPoly.x(field.zero))

    @classmethod
    def zero_of(cls, field):
        return cls.const(field, 0)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise ValueError("rational functions over different parameter fields")
            return other
        if isinstance(other, (int, Fraction, ParamElem)):
            return RatFunc.const(self.field, other)
        raise TypeError(type(other).__name__)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.field, self.num + other.num, self.den)
        a, b = self._pair(), other._pair()
        if a and b and self.den.degree + other.den.degree > 1:
            # only factors of gcd(Q1, Q2) can cancel
            g, q1, q2 = a[1].cofactors(b[1])
            num = a[0] * q2 + b[0] * q1
            if not num:
                return RatFunc.zero_of(self.field)
            h, num, _ = num.cofactors(g)
            return RatFunc._from_pair(self.field, num, q1 * b[1].exquo(h), coprime=True)
        g = gcd(self.den, other.den)
        a = other.den.exact_div(g)
        b = self.den.exact_div(g)
        return RatFunc(self.field, self.num * a + other.num * b, self.den * a)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den, _reduced=True)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamElem)):
            c = self.field.coerce(other)
            if not c:
                return RatFunc.zero_of(self.field)
            return RatFunc(self.field, self.num.scale(c), self.den, _reduced=True)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc.zero_of(self.field)
        if self.den.degree + other.den.degree > 0:
            a, b = self._pair(), other._pair()
            if a and b:
                g1, p1, q2 = a[0].cofactors(b[1])
                g2, p2, q1 = b[0].cofactors(a[1])
                return RatFunc._from_pair(self.field, p1 * p2, q1 * q2, coprime=True)
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFunc(self.field, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.field, self.num ** n, self.den ** n, _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        from .forms import format_ratfunc

        return format_ratfunc(self)

    # -- structure ------------------------------------------------------------

    @property
    def is_polynomial(self):
        return self.den.degree == 0

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        """The ParamElem value of a z-free function."""
        if not self.is_constant():
            raise ValueError("not constant in z")
        return self.num.coeff(0)

    def order_at_infinity(self):
        """deg(den) - deg(num); None for the zero function."""
        if not self.num:
            return None
        return self.den.degree - self.num.degree

    def polynomial_part(self):
        return self.num // self.den

    def diff(self):
        """d/dz."""
        if self.den.degree == 0:
            return RatFunc.from_poly(self.field, self.num.deriv())
        pair = self._pair()
        if pair:
            P, Q = pair
            z = P.ring.gens[0]
            # with g = gcd(Q, Q') the quotient below is already reduced
            _, sq, dq = Q.cofactors(Q.diff(z))
            return RatFunc._from_pair(self.field, P.diff(z) * sq - P * dq, Q * sq, coprime=True)
        num = self.num.deriv() * self.den - self.num * self.den.deriv()
        return RatFunc(self.field, num, self.den * self.den)

    def diff_param(self, i):
        return self.apply_derivation(Derivation.param(self.field, i))

    def apply_derivation(self, d):
        """Exact derivative along ``d`` (z or a parameter combination)."""
        if d.is_z:
            return self.diff()
        dn = self.num.map(d.on_param)
        dd = self.den.map(d.on_param)
        if not dd:
            return RatFunc(self.field, dn, self.den)
        return RatFunc(self.field, dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, zval):
        """Value at z = zval (a ParamElem); pole raises ZeroDivisionError."""
        den = self.den(zval)
        if not den:
            raise ZeroDivisionError("division by zero")
        return self.num(zval) / den

    def evaluate_numeric(self, zval, point):
        num = sum(c.evaluate(point) * zval ** i for i, c in enumerate(self.num.coeffs))
        den = sum(c.evaluate(point) * zval ** i for i, c in enumerate(self.den.coeffs))
        return num / den

    def coefficients(self):
        return list(self.num.coeffs) + list(self.den.coeffs)

    def is_param_free(self):
        return all(c.is_constant() for c in self.coefficients())


def _reduce(field, num, den):
    if not den:
        raise ZeroDivisionError("division by zero")
    if not num:
        return UPoly([], field.zero), UPoly([field.one], field.zero)
    if den.degree > 0 and all(c.level == 0 for c in num.coeffs) and all(
            c.level == 0 for c in den.coeffs):
        P, Q = zt_pair(num, den)
        return from_zt_pair(P, Q, field)
    if den.degree > 0:
        g = gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
    lc = den.lc
    if lc != field.one:
        inv = lc.inverse()
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def normalize(field: ParamField, num, den):
    """Canonical RatFunc from unreduced numerator and denominator.

    ``num`` and ``den`` may be UPolys or RatFuncs/ParamElems/ints.
    """
    if isinstance(num, UPoly) and isinstance(den, UPoly):
        return RatFunc(field, num, den)
    num = num if isinstance(num, RatFunc) else RatFunc.const(field, num)
    den = den if isinstance(den, RatFunc) else RatFunc.const(field, den)
    return num / den
