"""Dense univariate polynomials over an exact field.

Coefficients are any objects with field arithmetic and a falsy zero
(ParamElem or RatFunc).  Stored low degree first without trailing zeros.
"""

from __future__ import annotations


class UPoly:
    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs, zero):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.zero = zero

    @classmethod
    def const(cls, c, zero):
        return cls([c], zero)

    @classmethod
    def monomial(cls, k, zero, c=None):
        one = zero + 1
        return cls([zero] * k + [one if c is None else c], zero)

    @classmethod
    def x(cls, zero):
        return cls.monomial(1, zero)

    @property
    def one(self):
        return self.zero + 1

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.zero

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return not other
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly({list(self.coeffs)!r})"

    def _wrap(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly([self.zero + other], self.zero)

    def __add__(self, other):
        other = self._wrap(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.zero)

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.zero)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly([c * other for c in self.coeffs], self.zero)
        if not self.coeffs or not other.coeffs:
            return UPoly([], self.zero)
        out = [self.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UPoly(out, self.zero)

    def __rmul__(self, other):
        return UPoly([other * c for c in self.coeffs], self.zero)

    def __pow__(self, n):
        result = UPoly([self.one], self.zero)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        return UPoly([c * a for a in self.coeffs], self.zero)

    def monic(self):
        if not self.coeffs:
            return self
        inv = self.one / self.lc
        return UPoly([c * inv for c in self.coeffs], self.zero)

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = self.one / other.lc
        quot = [self.zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = c * inv
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - c * b
        return UPoly(quot, self.zero), UPoly(rem[:dq], self.zero)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        acc = self.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self):
        return UPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.zero)

    def shift(self, a):
        """p(x + a) by repeated synthetic division."""
        coeffs = list(self.coeffs)
        n = len(coeffs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                coeffs[j] = coeffs[j] + a * coeffs[j + 1]
        return UPoly(coeffs, self.zero)

    def reverse(self, n=None):
        """x**n * p(1/x) with n = degree by default."""
        n = self.degree if n is None else n
        coeffs = list(self.coeffs) + [self.zero] * (n + 1 - len(self.coeffs))
        return UPoly(reversed(coeffs[: n + 1]), self.zero)

    def map(self, fn, zero=None):
        return UPoly([fn(c) for c in self.coeffs], self.zero if zero is None else zero)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def multiplicity(self, factor):
        """Largest m with factor**m dividing self (self nonzero)."""
        m = 0
        p = self
        while p.degree >= factor.degree:
            q, r = p.divmod(factor)
            if r:
                break
            p, m = q, m + 1
        return m


def _base_level(p):
    return all(getattr(c, "level", None) == 0 for c in p.coeffs)


def gcd(a, b):
    """Monic gcd (zero if both are zero)."""
    if a.degree > 0 and b.degree > 0 and _base_level(a) and _base_level(b):
        from .factor import multivariate_gcd

        return multivariate_gcd(a, b)
    while b:
        a, b = b, a % b
    return a.monic()


def lcm(a, b):
    if not a or not b:
        return UPoly([], a.zero)
    return (a * b).exact_div(gcd(a, b)).monic()


def squarefree_decomposition(p):
    """Yun's algorithm: [(s_1, 1), (s_2, 2), ...] with monic squarefree s_i."""
    p = p.monic()
    if p.degree < 1:
        return []
    out = []
    dp = p.deriv()
    a = gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.deriv()
    i = 1
    while b.degree >= 1:
        a = gcd(b, d)
        if a.degree >= 1:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.deriv()
        i += 1
    return out


def squarefree_part(p):
    if p.degree < 1:
        return p.monic()
    return p.exact_div(gcd(p, p.deriv())).monic()


def gcdex(a, b):
    """(s, t, g) with s*a + t*b = g = gcd(a, b) monic."""
    zero = a.zero
    one = UPoly([a.one], zero)
    r0, r1 = a, b
    s0, s1 = one, UPoly([], zero)
    t0, t1 = UPoly([], zero), one
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return s0, t0, r0
    inv = a.one / r0.lc
    return s0.scale(inv), t0.scale(inv), r0.scale(inv)


def solve_bezout(a, b, c):
    """(s, t) with s*a + t*b = c and deg s < deg b; needs gcd(a, b) | c."""
    s0, _, g = gcdex(a, b)
    q, rem = c.divmod(g)
    if rem:
        raise ArithmeticError("right-hand side not divisible by the gcd")
    s = (s0 * q) % b if b.degree > 0 else UPoly([], a.zero)
    t = (c - s * a).exact_div(b)
    return s, t
