"""Kovacic's algorithm for v'' = r v over the parameter field.

Exponents and degrees are admissible only when they are integers that do
not depend on the parameters (generic parameter values).  Square roots of
parameter functions needed by case 1 are adjoined to the field tower.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .factor import factor_roots, irreducible_factors
from .linode import LinDiffOp
from .params import rational_sqrt
from .ratfunc import RatFunc
from .ratsolve import _solve_ansatz
from .series import laurent_at, laurent_at_infinity, series_sqrt
from .upoly import UPoly, squarefree_part

__all__ = [
    "RiccatiSolution",
    "QuadraticMinPoly",
    "FiniteWitness",
    "CaseVerdict",
    "necessary_conditions",
    "case1_search",
    "case2_search",
    "case3_search",
    "classify",
]


@dataclass(frozen=True)
class RiccatiSolution:
    f: RatFunc

    def residual(self, r):
        return self.f.diff() + self.f * self.f - r

    def verify(self, r):
        return not self.residual(r)


@dataclass(frozen=True)
class QuadraticMinPoly:
    """f**2 + a f + b = 0."""

    a: RatFunc
    b: RatFunc

    @property
    def discriminant(self):
        return self.a * self.a - self.b * 4

    def verify(self, r):
        """Both roots (-a +- w)/2, w**2 = a**2 - 4b, solve the Riccati equation.

        Writing f' + f**2 - r = P + Q w with w' = (D'/2D) w, both P and Q
        must vanish.
        """
        a, D = self.a, self.discriminant
        if not D:
            return False
        p = -a.diff() / 2 + (a * a + D) / 4 - r
        q = D.diff() / (D * 4) - a / 2
        return not p and not q


@dataclass(frozen=True)
class FiniteWitness:
    """sum_i coeffs[i] * w**i = 0 is satisfied by a log-derivative w."""

    n: int
    coeffs: tuple

    def verify(self, r):
        """Invariance of the polynomial F(w) under w' = r - w**2.

        d/dz F(w) = F_z + F_w (r - w**2) must vanish modulo F.
        """
        field = r.field
        zero = RatFunc.zero_of(field)
        F = UPoly(list(self.coeffs), zero)
        Fz = F.map(lambda c: c.diff(), zero)
        flow = UPoly([r, zero, -RatFunc.const(field, 1)], zero)
        total = Fz + F.deriv() * flow
        return not (total % F)


@dataclass(frozen=True)
class CaseVerdict:
    case: int
    payload: object
    trace: tuple = ()
    assumptions: tuple = ()


# -- local data ---------------------------------------------------------------


@dataclass(frozen=True)
class _Pole:
    point: object
    order: int


def _poles(r):
    out = []
    for factor, m in irreducible_factors(r.den):
        for alpha in factor_roots(factor):
            out.append(_Pole(alpha, m))
    return out


def _pole_orders(r):
    return [m for factor, m in irreducible_factors(r.den) for _ in range(factor.degree)]


def _inf_order(r):
    o = r.order_at_infinity()
    return float("inf") if o is None else o


def necessary_conditions(r):
    """(possible cases, trace of exclusions)."""
    orders = _pole_orders(r)
    o = _inf_order(r)
    cases = []
    trace = []
    if all(m == 1 or m % 2 == 0 for m in orders) and (o == float("inf") or o % 2 == 0 or o > 2):
        cases.append(1)
    else:
        trace.append("case 1 excluded: a pole of odd order > 1 or odd order at infinity <= 2")
    if any(m == 2 or (m % 2 == 1 and m > 2) for m in orders):
        cases.append(2)
    else:
        trace.append("case 2 excluded: no pole of order 2 or of odd order > 2")
    if all(m <= 2 for m in orders) and o >= 2:
        cases.append(3)
    else:
        trace.append("case 3 excluded: a pole of order > 2 or order at infinity < 2")
    return tuple(cases), tuple(trace)


def _sqrt_disc(field, b):
    """sqrt(1 + 4 b), adjoined if necessary."""
    return field.sqrt(b * 4 + 1)


def _rational_sqrt_disc(b):
    """sqrt(1 + 4 b) as a Fraction when it is a rational constant, else None."""
    q = (b * 4 + 1).as_rational()
    if q is None:
        return None
    return rational_sqrt(q)


def _lin(field, c):
    return RatFunc.from_poly(field, UPoly([-c, field.one], field.zero))


@dataclass(frozen=True)
class _Local:
    sqrt_part: RatFunc
    alphas: tuple  # ((sign, alpha), ...)


def _case1_local_pole(r, pole):
    field = r.field
    zero_rf = RatFunc.zero_of(field)
    m = pole.order
    if m == 1:
        return _Local(zero_rf, ((1, field.one),))
    if m == 2:
        b = laurent_at(r, pole.point, 1).coeffs[0]
        s = _sqrt_disc(field, b)
        half = Fraction(1, 2)
        return _Local(zero_rf, ((1, (s + 1) * half), (-1, (-s + 1) * half)))
    nu = m // 2
    ser = laurent_at(r, pole.point, nu)
    lead = field.sqrt(ser.coeffs[0])
    sq = series_sqrt(ser, lead, nu - 1)
    part = zero_rf
    lin = _lin(field, pole.point)
    for k in range(-nu, -1):
        c = sq.coeff(k)
        if c:
            part = part + RatFunc.const(field, c) * lin ** k
    cross = field.zero
    for j in range(-nu + 1, -1):
        k = -nu - 1 - j
        cross = cross + sq.coeff(j) * sq.coeff(k)
    b = ser.coeff(-nu - 1) - cross
    a = sq.coeff(-nu)
    ratio = b / a
    half = Fraction(1, 2)
    return _Local(part, ((1, (ratio + nu) * half), (-1, (-ratio + nu) * half)))


def _case1_local_inf(r):
    field = r.field
    zero_rf = RatFunc.zero_of(field)
    o = _inf_order(r)
    half = Fraction(1, 2)
    if o > 2:
        return _Local(zero_rf, ((1, field.zero), (-1, field.one)))
    if o == 2:
        b = laurent_at_infinity(r, 1).coeffs[0]
        s = _sqrt_disc(field, b)
        return _Local(zero_rf, ((1, (s + 1) * half), (-1, (-s + 1) * half)))
    nu = -o // 2
    ser = laurent_at_infinity(r, nu + 2)
    lead = field.sqrt(ser.coeffs[0])
    sq = series_sqrt(ser, lead, nu + 1)
    z = RatFunc.z(field)
    part = zero_rf
    for k in range(nu + 1):
        c = sq.coeff(-k)
        if c:
            part = part + RatFunc.const(field, c) * z ** k
    cross = field.zero
    for j in range(-nu, 1):
        k = 1 - nu - j
        if -nu <= k <= 0:
            cross = cross + sq.coeff(j) * sq.coeff(k)
    b = ser.coeff(1 - nu) - cross
    a = sq.coeff(-nu)
    ratio = b / a
    return _Local(part, ((1, (ratio - nu) * half), (-1, (-ratio - nu) * half)))


def _polynomial_solution(coeffs, degree):
    """A nonzero polynomial P of degree <= ``degree`` with L(P) = 0, or None."""
    L = LinDiffOp(tuple(coeffs))
    field = L.field
    one = UPoly([field.one], field.zero)
    rows = _solve_ansatz(L, [], one, degree)
    if not rows:
        return None
    return RatFunc(field, UPoly(list(rows[0]), field.zero), one)


def case1_search(r):
    """A rational solution f of f' + f**2 = r, or None."""
    field = r.field
    if not r:
        return RiccatiSolution(RatFunc.zero_of(field))
    if 1 not in necessary_conditions(r)[0]:
        return None
    poles = _poles(r)
    local = [_case1_local_pole(r, p) for p in poles]
    inf = _case1_local_inf(r)
    one = RatFunc.const(field, 1)
    choices = [loc.alphas for loc in local] + [inf.alphas]
    for combo in itertools.product(*choices):
        *at_poles, (s_inf, a_inf) = combo
        d = a_inf
        for _, a in at_poles:
            d = d - a
        deg = d.as_integer()
        if deg is None or deg < 0:
            continue
        omega = inf.sqrt_part * s_inf
        for pole, loc, (s, a) in zip(poles, local, at_poles):
            omega = omega + loc.sqrt_part * s + RatFunc.const(field, a) / _lin(field, pole.point)
        c0 = omega.diff() + omega * omega - r
        P = _polynomial_solution([c0, omega * 2, one], deg)
        if P is None:
            continue
        sol = RiccatiSolution(omega + P.diff() / P)
        if sol.verify(r):
            return sol
    return None


def _int_candidates(centre, step, kmax, root):
    """Integers among centre + step*k*root for |k| <= kmax."""
    out = {centre}
    if root is not None:
        for k in range(-kmax, kmax + 1):
            v = centre + step * k * root
            if v.denominator == 1:
                out.add(v)
    return sorted(int(v) for v in out if Fraction(v).denominator == 1)


def _case2_sets(r, poles):
    sets = []
    for p in poles:
        if p.order == 1:
            sets.append([4])
        elif p.order == 2:
            root = _rational_sqrt_disc(laurent_at(r, p.point, 1).coeffs[0])
            sets.append(_int_candidates(Fraction(2), 2, 1, root))
        else:
            sets.append([p.order])
    o = _inf_order(r)
    if o > 2:
        inf = [0, 2, 4]
    elif o == 2:
        root = _rational_sqrt_disc(laurent_at_infinity(r, 1).coeffs[0])
        inf = _int_candidates(Fraction(2), 2, 1, root)
    else:
        inf = [o]
    return sets, inf


def case2_search(r):
    """Quadratic minimal polynomial of a Riccati solution, or None."""
    field = r.field
    poles = _poles(r)
    sets, inf = _case2_sets(r, poles)
    one = RatFunc.const(field, 1)
    zero = RatFunc.zero_of(field)
    for e_inf in inf:
        for es in itertools.product(*sets):
            twice = e_inf - sum(es)
            if twice < 0 or twice % 2:
                continue
            deg = twice // 2
            theta = zero
            for p, e in zip(poles, es):
                theta = theta + RatFunc.const(field, Fraction(e, 2)) / _lin(field, p.point)
            dt = theta.diff()
            coeffs = [
                dt.diff() + theta * dt * 3 + theta ** 3 - r * theta * 4 - r.diff() * 2,
                theta * theta * 3 + dt * 3 - r * 4,
                theta * 3,
                one,
            ]
            P = _polynomial_solution(coeffs, deg)
            if P is None:
                continue
            phi = theta + P.diff() / P
            q = QuadraticMinPoly(-phi, phi.diff() / 2 + phi * phi / 2 - r)
            if q.verify(r):
                return q
    return None


def _case3_sets(r, poles, n):
    sets = []
    for p in poles:
        if p.order == 1:
            sets.append([12])
        else:
            root = _rational_sqrt_disc(laurent_at(r, p.point, 1).coeffs[0])
            sets.append(_int_candidates(Fraction(6), Fraction(12, n), n // 2, root))
    o = _inf_order(r)
    lead = laurent_at_infinity(r, 1).coeffs[0] if o == 2 else r.field.zero
    root = _rational_sqrt_disc(lead)
    return sets, _int_candidates(Fraction(6), Fraction(12, n), n // 2, root)


def _case3_chain(r, S, theta, n, P):
    """P_{-1} of the recursion started at P_n = -P, plus the whole chain."""
    dS = S.diff()
    chain = {n: -P}
    nxt = None
    cur = -P
    for i in range(n, -1, -1):
        prev = -S * cur.diff() + (dS * (n - i) - S * theta) * cur
        if nxt is not None:
            prev = prev - S * S * r * nxt * ((n - i) * (i + 1))
        nxt, cur = cur, prev
        chain[i - 1] = cur
    return chain


def case3_search(r, degrees=(4, 6, 12)):
    """Witness polynomial of degree n in the log-derivative, or None."""
    field = r.field
    zero = field.zero
    poles = _poles(r)
    S = RatFunc.from_poly(field, squarefree_part(r.den) if r.den.degree > 0 else UPoly([field.one], zero))
    for n in degrees:
        sets, inf = _case3_sets(r, poles, n)
        for e_inf in inf:
            for es in itertools.product(*sets):
                dq = Fraction(n, 12) * (e_inf - sum(es))
                if dq < 0 or dq.denominator != 1:
                    continue
                deg = int(dq)
                theta = RatFunc.zero_of(field)
                for p, e in zip(poles, es):
                    theta = theta + RatFunc.const(field, Fraction(n * e, 12)) / _lin(field, p.point)
                cols = []
                for k in range(deg + 1):
                    mono = RatFunc.from_poly(field, UPoly.monomial(k, zero))
                    cols.append(_case3_chain(r, S, theta, n, mono)[-1])
                P = _combine_kernel(field, cols, deg)
                if P is None:
                    continue
                chain = _case3_chain(r, S, theta, n, P)
                coeffs = tuple(S ** i * chain[i] / factorial(n - i) for i in range(n + 1))
                w = FiniteWitness(n, coeffs)
                if w.verify(r):
                    return w
    return None


def _combine_kernel(field, cols, deg):
    """Nonzero polynomial sum p_k z**k with sum p_k cols[k] = 0, or None."""
    from .linalg import nullspace
    from .upoly import lcm

    zero = field.zero
    common = UPoly([field.one], zero)
    for c in cols:
        if c:
            common = lcm(common, c.den)
    polys = [c.num * common.exact_div(c.den) if c else UPoly([], zero) for c in cols]
    height = max((p.degree for p in polys), default=-1)
    rows = [[p.coeff(d) for p in polys] for d in range(height + 1)]
    basis = nullspace(rows, deg + 1, zero, field.one)
    if not basis:
        return None
    return RatFunc.from_poly(field, UPoly(list(basis[0]), zero))


def classify(r):
    """Screen, then cases 1, 2, 3 in order; case 4 when all fail."""
    cases, trace = necessary_conditions(r)
    trace = list(trace)
    if 1 in cases:
        sol = case1_search(r)
        if sol is not None:
            return CaseVerdict(1, sol, tuple(trace))
        trace.append("case 1 search: no rational Riccati solution")
    if 2 in cases:
        q = case2_search(r)
        if q is not None:
            return CaseVerdict(2, q, tuple(trace))
        trace.append("case 2 search: no quadratic Riccati solution")
    if 3 in cases:
        w = case3_search(r)
        if w is not None:
            return CaseVerdict(3, w, tuple(trace))
        trace.append("case 3 search: no algebraic Riccati solution of degree 4, 6 or 12")
    return CaseVerdict(4, None, tuple(trace))
