"""Truncated Laurent expansions of rational functions at a point or at infinity."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Laurent:
    """sum_{j} coeffs[j] * u**(val + j), exact up to u**(val + len(coeffs) - 1).

    ``u = z - alpha`` at a finite point and ``u = 1/z`` at infinity.
    """

    val: int
    coeffs: tuple
    zero: object

    def coeff(self, k):
        j = k - self.val
        if j < 0:
            return self.zero
        if j >= len(self.coeffs):
            raise IndexError(f"series known only up to u^{self.val + len(self.coeffs) - 1}")
        return self.coeffs[j]

    @property
    def precision(self):
        return self.val + len(self.coeffs)


def _divide(a, b, n, zero):
    out = []
    inv = (zero + 1) / b[0]
    for k in range(n):
        acc = a[k] if k < len(a) else zero
        for j in range(1, min(k, len(b) - 1) + 1):
            acc = acc - b[j] * out[k - j]
        out.append(acc * inv)
    return out


def laurent_at(x, alpha, nterms):
    """Expansion of the RatFunc ``x`` in u = z - alpha, ``nterms`` terms."""
    zero = x.field.zero
    num = x.num.shift(alpha)
    den = x.den.shift(alpha)
    if not num:
        return Laurent(0, tuple([zero] * nterms), zero)
    vn, vd = num.valuation(), den.valuation()
    coeffs = _divide(num.coeffs[vn:], den.coeffs[vd:], nterms, zero)
    return Laurent(vn - vd, tuple(coeffs), zero)


def laurent_at_infinity(x, nterms):
    """Expansion in u = 1/z; the valuation is deg(den) - deg(num)."""
    zero = x.field.zero
    if not x.num:
        return Laurent(0, tuple([zero] * nterms), zero)
    a = x.num.reverse().coeffs
    b = x.den.reverse().coeffs
    coeffs = _divide(a, b, nterms, zero)
    return Laurent(x.den.degree - x.num.degree, tuple(coeffs), zero)


def series_sqrt(s, lead_root, nterms):
    """Square root of a Laurent series with even valuation.

    ``lead_root`` is a chosen square root of the leading coefficient.
    """
    if s.val % 2:
        raise ValueError("odd valuation has no Laurent square root")
    zero = s.zero
    a = s.coeffs
    out = [lead_root]
    two_inv = (zero + 1) / (lead_root + lead_root)
    for k in range(1, nterms):
        acc = a[k] if k < len(a) else zero
        for j in range(1, k):
            acc = acc - out[j] * out[k - j]
        out.append(acc * two_inv)
    return Laurent(s.val // 2, tuple(out), zero)


def series_mul(s, t, nterms):
    zero = s.zero
    out = []
    for k in range(nterms):
        acc = zero
        for j in range(k + 1):
            if j < len(s.coeffs) and k - j < len(t.coeffs):
                acc = acc + s.coeffs[j] * t.coeffs[k - j]
        out.append(acc)
    return Laurent(s.val + t.val, tuple(out), zero)
