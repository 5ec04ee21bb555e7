"""Canonical text forms.

Grammar of every emitted form (also accepted by ``parser.parse_form``):
integers and rationals ``p/q``, identifiers (``z`` and parameter names),
``+ - * / ^`` with integer exponents, parentheses, and ``sqrt(...)`` of a
z-free radicand.  Base-level parameter fractions are printed with a monic
denominator (graded lexicographic, t1 < ... < tn); rational functions in z
are printed with a monic denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = [
    "format_param",
    "format_ratfunc",
    "format_upoly",
    "format_derivation",
    "format_relation",
    "format_fraction",
]


def format_fraction(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class _Form:
    """A formatted piece: text plus whether it is a top-level sum."""

    __slots__ = ("text", "is_sum")

    def __init__(self, text, is_sum):
        self.text = text
        self.is_sum = is_sum

    def factor(self):
        """Text usable as the left operand of ``*`` (left-associative)."""
        return f"({self.text})" if self.is_sum else self.text


def _join(terms):
    if not terms:
        return _Form("0", False)
    out = terms[0]
    for term in terms[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return _Form(out, len(terms) > 1)


def _format_poly_t(p, names):
    """Polynomial over QQ in the reversed-generator base ring."""
    order = list(reversed(names))
    terms = []
    for monom, coeff in p.terms():
        c = Fraction(int(coeff.numerator), int(coeff.denominator))
        factors = []
        for name in names:
            e = monom[order.index(name)]
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        if not mono:
            terms.append(format_fraction(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{format_fraction(c)}*{mono}")
    return _join(terms)


def _base_form(frac, names):
    num, den = frac.numer, frac.denom
    if not num:
        return _Form("0", False)
    lc = den.LC
    if lc != 1:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    # clear rational coefficients; the denominator keeps a positive leading term
    scale = 1
    contents = []
    for p in (num, den):
        for _, c in p.terms():
            c = Fraction(int(c.numerator), int(c.denominator))
            scale = scale * c.denominator // gcd(scale, c.denominator)
            contents.append(c)
    g = 0
    for c in contents:
        g = gcd(g, (c * scale).numerator)
    factor = Fraction(scale, g)
    num = num.mul_ground(num.ring.domain.convert(factor))
    den = den.mul_ground(den.ring.domain.convert(factor))
    nf = _format_poly_t(num, names)
    if den.is_ground and den.LC == 1:
        return nf
    df = _format_poly_t(den, names)
    n_text = f"({nf.text})" if nf.is_sum else nf.text
    d_text = f"({df.text})" if df.is_sum or "*" in df.text else df.text
    return _Form(f"{n_text}/{d_text}", False)


def _param_form(field, level, raw):
    if level == 0:
        return _base_form(raw, field.names)
    a, b = raw
    terms = []
    if not field._iszero(level - 1, a):
        terms.append(_param_form(field, level - 1, a).text)
    if not field._iszero(level - 1, b):
        rad = _param_form(field, level - 1, field._radicands[level - 1])
        gen = f"sqrt({rad.text})"
        bf = _param_form(field, level - 1, b)
        if bf.text == "1":
            terms.append(gen)
        elif bf.text == "-1":
            terms.append("-" + gen)
        else:
            terms.append(_scaled_root(bf, gen))
    return _join(terms)


def _top_level_slash(text):
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0:
            return i
    return -1


def _scaled_root(coeff, gen):
    """coeff*gen, written n*gen/d when coeff is a quotient."""
    k = -1 if coeff.is_sum else _top_level_slash(coeff.text)
    if k < 0:
        return f"{coeff.factor()}*{gen}"
    n_text, d_text = coeff.text[:k], coeff.text[k + 1:]
    if n_text in ("1", "-1"):
        head = gen if n_text == "1" else "-" + gen
    else:
        head = f"{n_text}*{gen}"
    return f"{head}/{d_text}"


def format_param(x):
    return _param_form(x.field, x.level, x.raw).text


def _coeff_times(c, var_text):
    form = _param_form(c.field, c.level, c.raw)
    if form.text == "1":
        return var_text
    if form.text == "-1":
        return "-" + var_text
    return f"{form.factor()}*{var_text}"


def format_upoly(p, var="z"):
    if not p.coeffs:
        return "0"
    return _upoly_form(p, var).text


def _upoly_form(p, var):
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        if k == 0:
            form = _param_form(c.field, c.level, c.raw)
            if len(terms) == 0:
                return form
            terms.append(form.text)
        else:
            terms.append(_coeff_times(c, var if k == 1 else f"{var}^{k}"))
    return _join(terms)


def _coefficient_denominator(poly):
    """lcm of the rational denominators in the numerators of all coordinates."""
    q = 1
    for c in poly.coeffs:
        for frac in c.coords():
            if not frac:
                continue
            lc = frac.denom.LC
            for _, coeff in frac.numer.terms():
                d = int((coeff / lc).denominator)
                q = q * d // gcd(q, d)
    return q


def format_ratfunc(x):
    if x.den.degree == 0:
        return _upoly_form(x.num, "z").text if x.num else "0"
    q = _coefficient_denominator(x.num)
    q = q * _coefficient_denominator(x.den) // gcd(q, _coefficient_denominator(x.den))
    num, den = x.num, x.den
    if q != 1:
        num, den = num.scale(x.field.const(q)), den.scale(x.field.const(q))
    nf = _upoly_form(num, "z")
    df = _upoly_form(den, "z")
    n_text = f"({nf.text})" if nf.is_sum else nf.text
    d_simple = not df.is_sum and "*" not in df.text and "/" not in df.text
    d_text = df.text if d_simple else f"({df.text})"
    return f"{n_text}/{d_text}"


def format_derivation(d):
    if d.is_z:
        return "d_z"
    terms = []
    for name, c in reversed(list(zip(d.field.names, d.coeffs))):
        if c:
            terms.append(_coeff_times(c, f"d_{name}"))
    return _join(terms).text if terms else "0"


def _deriv_text(field, var, orders):
    text = f"L_{field.names[var]}"
    for i in range(len(orders) - 1, -1, -1):
        for _ in range(orders[i]):
            text = f"d_{field.names[i]}({text})"
    return text


def format_relation(field, relation):
    """Linear differential polynomial {(var, orders): coeff} as 'expr = 0'.

    ``L_ti`` stands for the logarithmic derivative d_ti(alpha)/alpha.
    """
    terms = []
    for (var, orders), c in sorted(relation.items(), key=lambda kv: (-sum(kv[0][1]), kv[0])):
        if c:
            terms.append(_coeff_times(c, _deriv_text(field, var, orders)))
    return _join(terms).text + " = 0"
