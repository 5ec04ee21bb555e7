"""Parameter field: Q(t1..tn) with an append-only tower of square roots.

Level 0 is sympy's sparse rational function field over QQ.  Level k
adjoins a generator s_k with s_k**2 = d_k, where d_k lives at level k-1
and is not a square there.  A level-k element is stored raw as a pair
(a, b) of level-(k-1) raws meaning a + b*s_k.  Elements are kept at the
lowest level that contains them, so equality is structural.

The base ring is built with the generators reversed, so sympy's grlex
order is graded lexicographic with t1 < ... < tn.
"""

from __future__ import annotations

import cmath
import keyword
from fractions import Fraction
from math import isqrt

from sympy import QQ
from sympy.polys.fields import field as sparse_field
from sympy.polys.orderings import grlex

__all__ = ["ParamField", "ParamElem", "Derivation", "rational_sqrt"]


def rational_sqrt(q):
    """Exact square root of a nonnegative rational, or None."""
    q = Fraction(int(q.numerator), int(q.denominator))
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _to_fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


class ParamField:
    """Computable constant field for one analysis run.

    The tower only grows; elements created before an adjunction stay valid.
    """

    def __init__(self, names=()):
        names = tuple(names)
        for name in names:
            if not name.isidentifier() or keyword.iskeyword(name):
                raise ValueError(f"invalid parameter name {name!r}")
            if name == "z":
                raise ValueError("parameter name 'z' is reserved")
        if len(set(names)) != len(names):
            raise ValueError("parameter names must be distinct")
        self.names = names
        built = sparse_field(list(reversed(names)), QQ, grlex)
        self.base = built[0]
        self._basegens = dict(zip(reversed(names), built[1:]))
        self._radicands = []
        self._dlog = {}
        self._zeros = [self.base.zero]
        self.zero = ParamElem(self, 0, self.base.zero)
        self.one = ParamElem(self, 0, self.base.one)

    def __repr__(self):
        return f"ParamField({list(self.names)!r}, height={self.height})"

    @property
    def nparams(self):
        return len(self.names)

    @property
    def height(self):
        return len(self._radicands)

    def generator(self, k):
        """The k-th adjoined square root (1-based) as an element."""
        return ParamElem(self, k, (self._zero(k - 1), self._one(k - 1)))

    def radicand(self, k):
        return ParamElem(self, k - 1, self._radicands[k - 1])

    def param(self, name):
        return ParamElem(self, 0, self.base(self._basegens[name]))

    def params(self):
        return [self.param(name) for name in self.names]

    def const(self, q):
        q = Fraction(q)
        return ParamElem(self, 0, self.base(QQ(q.numerator, q.denominator)))

    def coerce(self, x):
        if isinstance(x, ParamElem):
            if x.field is not self:
                raise ValueError("elements belong to different parameter fields")
            return x
        if isinstance(x, (int, Fraction)):
            return self.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into the parameter field")

    def from_base(self, frac):
        return ParamElem(self, 0, frac)

    # -- square roots ---------------------------------------------------------

    def sqrt(self, x):
        """Adjoin a square root of ``x`` unless one already exists.

        A radicand that is a square in the current tower (including one that
        differs from an earlier radicand by a square factor) is answered
        without extending.
        """
        x = self.coerce(x)
        if not x:
            return self.zero
        top = self.height
        root = self._sqrt(top, self._lift(x.raw, x.level, top))
        if root is not None:
            return ParamElem(self, top, root)
        self._radicands.append(self._lift(x.raw, x.level, top))
        self._zeros.append((self._zeros[-1], self._zeros[-1]))
        return self.generator(top + 1)

    def is_square(self, x):
        x = self.coerce(x)
        top = self.height
        return self._sqrt(top, self._lift(x.raw, x.level, top)) is not None

    def sqrt_in_tower(self, x):
        """Square root inside the current tower, or None (never extends)."""
        x = self.coerce(x)
        top = self.height
        root = self._sqrt(top, self._lift(x.raw, x.level, top))
        return None if root is None else ParamElem(self, top, root)

    # -- raw arithmetic -------------------------------------------------------

    def _zero(self, k):
        return self._zeros[k]

    def _one(self, k):
        raw = self.base.one
        for j in range(k):
            raw = (raw, self._zeros[j])
        return raw

    def _lift(self, raw, frm, to):
        while frm < to:
            raw = (raw, self._zeros[frm])
            frm += 1
        return raw

    def _iszero(self, k, x):
        if k == 0:
            return not x
        return self._iszero(k - 1, x[0]) and self._iszero(k - 1, x[1])

    def _add(self, k, x, y):
        if k == 0:
            return x + y
        return (self._add(k - 1, x[0], y[0]), self._add(k - 1, x[1], y[1]))

    def _sub(self, k, x, y):
        if k == 0:
            return x - y
        return (self._sub(k - 1, x[0], y[0]), self._sub(k - 1, x[1], y[1]))

    def _neg(self, k, x):
        if k == 0:
            return -x
        return (self._neg(k - 1, x[0]), self._neg(k - 1, x[1]))

    def _mul(self, k, x, y):
        if k == 0:
            return x * y
        a, b = x
        c, e = y
        d = self._radicands[k - 1]
        j = k - 1
        ac = self._mul(j, a, c)
        be = self._mul(j, b, e)
        re = self._add(j, ac, self._mul(j, d, be))
        im = self._add(j, self._mul(j, a, e), self._mul(j, b, c))
        return (re, im)

    def _inv(self, k, x):
        if k == 0:
            if not x:
                raise ZeroDivisionError("division by zero")
            return 1 / x
        a, b = x
        j = k - 1
        d = self._radicands[j]
        norm = self._sub(j, self._mul(j, a, a), self._mul(j, d, self._mul(j, b, b)))
        ninv = self._inv(j, norm)
        return (self._mul(j, a, ninv), self._neg(j, self._mul(j, b, ninv)))

    def _dlog_of(self, k, i):
        key = (k, i)
        if key not in self._dlog:
            j = k - 1
            d = self._radicands[j]
            two_d = self._add(j, d, d)
            self._dlog[key] = self._mul(j, self._diff(j, d, i), self._inv(j, two_d))
        return self._dlog[key]

    def _diff(self, k, x, i):
        if k == 0:
            return x.diff(self.base(self._basegens[self.names[i]]))
        a, b = x
        j = k - 1
        db = self._add(j, self._diff(j, b, i), self._mul(j, b, self._dlog_of(k, i)))
        return (self._diff(j, a, i), db)

    def _sqrt(self, k, x):
        if k == 0:
            return self._base_sqrt(x)
        a, b = x
        j = k - 1
        d = self._radicands[j]
        if self._iszero(j, b):
            r = self._sqrt(j, a)
            if r is not None:
                return (r, self._zero(j))
            r = self._sqrt(j, self._mul(j, a, self._inv(j, d)))
            if r is not None:
                return (self._zero(j), r)
            return None
        norm = self._sub(j, self._mul(j, a, a), self._mul(j, d, self._mul(j, b, b)))
        n = self._sqrt(j, norm)
        if n is None:
            return None
        half = self.base(QQ(1, 2))
        half = self._lift(half, 0, j)
        for cand in (n, self._neg(j, n)):
            u2 = self._mul(j, self._add(j, a, cand), half)
            u = self._sqrt(j, u2)
            if u is not None and not self._iszero(j, u):
                two_u = self._add(j, u, u)
                return (u, self._mul(j, b, self._inv(j, two_u)))
        return None

    def _base_sqrt(self, x):
        if not x:
            return x
        num, den = x.numer, x.denom
        prod = num * den
        if prod.ring.ngens == 0 or prod.is_ground:
            q = rational_sqrt(_to_fraction(prod.LC))
            if q is None:
                return None
            return self.base(QQ(q.numerator, q.denominator)) / self.base(den)
        lc, factors = prod.sqf_list()
        if any(m % 2 for _, m in factors):
            return None
        q = rational_sqrt(_to_fraction(lc))
        if q is None:
            return None
        root = prod.ring(QQ(q.numerator, q.denominator))
        for f, m in factors:
            root = root * f ** (m // 2)
        return self.base(root) / self.base(den)

    def _coords(self, k, x):
        if k == 0:
            return [x]
        return self._coords(k - 1, x[0]) + self._coords(k - 1, x[1])

    def _eval(self, k, x, point):
        if k == 0:
            num = complex(_eval_poly(x.numer, point, self))
            den = complex(_eval_poly(x.denom, point, self))
            return num / den
        gen = cmath.sqrt(self._eval(k - 1, self._radicands[k - 1], point))
        return self._eval(k - 1, x[0], point) + self._eval(k - 1, x[1], point) * gen


def _eval_poly(p, point, fld):
    total = Fraction(0)
    order = list(reversed(fld.names))
    for monom, coeff in p.terms():
        term = _to_fraction(coeff)
        for name, e in zip(order, monom):
            term *= Fraction(point[name]) ** e
        total += term
    return total


class ParamElem:
    """Element of the parameter field tower; immutable."""

    __slots__ = ("field", "level", "raw")

    def __init__(self, field, level, raw):
        while level > 0 and field._iszero(level - 1, raw[1]):
            raw = raw[0]
            level -= 1
        self.field = field
        self.level = level
        self.raw = raw

    def _pair(self, other):
        other = self.field.coerce(other)
        k = max(self.level, other.level)
        f = self.field
        return k, f._lift(self.raw, self.level, k), f._lift(other.raw, other.level, k)

    def __add__(self, other):
        try:
            k, x, y = self._pair(other)
        except TypeError:
            return NotImplemented
        return ParamElem(self.field, k, self.field._add(k, x, y))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            k, x, y = self._pair(other)
        except TypeError:
            return NotImplemented
        return ParamElem(self.field, k, self.field._sub(k, x, y))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ParamElem(self.field, self.level, self.field._neg(self.level, self.raw))

    def __mul__(self, other):
        try:
            k, x, y = self._pair(other)
        except TypeError:
            return NotImplemented
        return ParamElem(self.field, k, self.field._mul(k, x, y))

    __rmul__ = __mul__

    def inverse(self):
        return ParamElem(self.field, self.level, self.field._inv(self.level, self.raw))

    def __truediv__(self, other):
        try:
            other = self.field.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return not self.field._iszero(self.level, self.raw)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.const(other)
        if not isinstance(other, ParamElem) or other.field is not self.field:
            return NotImplemented
        return self.level == other.level and self.raw == other.raw

    def __hash__(self):
        return hash((self.level, self.raw))

    def __repr__(self):
        from .forms import format_param

        return f"ParamElem({format_param(self)})"

    def __str__(self):
        from .forms import format_param

        return format_param(self)

    def diff(self, i):
        """Partial derivative with respect to parameter index ``i``."""
        return ParamElem(self.field, self.level, self.field._diff(self.level, self.raw, i))

    def is_constant(self):
        return all(not self.diff(i) for i in range(self.field.nparams))

    def as_rational(self):
        """The value as a Fraction when this is a rational constant, else None."""
        if self.level:
            return None
        num, den = self.raw.numer, self.raw.denom
        if not (num.is_ground and den.is_ground):
            return None
        return _to_fraction(num.LC) / _to_fraction(den.LC) if num else Fraction(0)

    def as_integer(self):
        q = self.as_rational()
        if q is None or q.denominator != 1:
            return None
        return int(q)

    def coords(self):
        """Level-0 coordinates over the full current tower basis."""
        f = self.field
        top = f.height
        return f._coords(top, f._lift(self.raw, self.level, top))

    def evaluate(self, point):
        """Complex value at a parameter point (dict name -> rational)."""
        return self.field._eval(self.level, self.raw, point)


class Derivation:
    """``d/dz`` or a parameter-direction combination sum a_i d/dt_i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=None):
        self.field = field
        self.coeffs = None if coeffs is None else tuple(field.coerce(c) for c in coeffs)
        if self.coeffs is not None and len(self.coeffs) != field.nparams:
            raise ValueError("derivation needs one coefficient per parameter")

    @classmethod
    def z(cls, field):
        return cls(field, None)

    @classmethod
    def param(cls, field, i):
        coeffs = [field.zero] * field.nparams
        coeffs[i] = field.one
        return cls(field, coeffs)

    @property
    def is_z(self):
        return self.coeffs is None

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        from .forms import format_derivation

        return f"Derivation({format_derivation(self)})"

    def on_param(self, x):
        """Apply to a parameter-field element (d/dz gives zero)."""
        if self.is_z:
            return self.field.zero
        total = self.field.zero
        for i, a in enumerate(self.coeffs):
            if a:
                total = total + a * x.diff(i)
        return total

    def commutes_with(self, other):
        """[self, other] = 0 on the parameter field."""
        if self.is_z or other.is_z:
            return True
        return all(
            other.on_param(a) == self.on_param(b) for a, b in zip(self.coeffs, other.coeffs)
        )
