"""Rational solutions of linear ODEs over the parameter field.

The solver bounds denominators and degrees from indicial polynomials and
solves one linear system for the numerator.  The oracle instead guesses a
fat denominator from the input denominators alone and a generous degree;
it shares only the final linear algebra with the solver.
"""

from __future__ import annotations

import random
from math import comb, perm
from dataclasses import dataclass, field as dc_field

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .factor import factor_roots, irreducible_factors
from .forms import format_param
from .factor import lift_t, monic_from_zt, scaled_zt, zring
from .linalg import fraction_free_nullspace, nullspace, rref
from .linode import INFINITY, LinDiffOp, apply_operator, constant_rational_roots, indicial_data
from .ratfunc import RatFunc
from .upoly import UPoly, lcm, squarefree_part

__all__ = [
    "AffineSolutionSpace",
    "ParametricSolution",
    "rational_solutions",
    "parametric_rational_solutions",
    "oracle_rational_solutions",
    "certified_agreement",
    "solution_bounds",
    "in_span",
    "spaces_agree",
]


@dataclass(frozen=True)
class AffineSolutionSpace:
    particular: object  # RatFunc, or None when there is no rational solution
    kernel: tuple
    assumptions: tuple = ()

    @property
    def has_solution(self):
        return self.particular is not None


@dataclass(frozen=True)
class ParametricSolution:
    """Pairs (a, b) with L(b) = sum a_i rhs_i, plus the homogeneous kernel."""

    pairs: tuple
    kernel: tuple
    assumptions: tuple = ()

    @property
    def dim(self):
        return len(self.pairs)


@dataclass(frozen=True)
class Bounds:
    denominator: UPoly
    numerator_degree: int  # -1 means only the zero numerator
    assumptions: tuple = dc_field(default=())


def _normalized(L):
    lead = L.coeffs[-1]
    return LinDiffOp(tuple(c / lead for c in L.coeffs))


def _den_lcm(items, field):
    dens = [x.den for x in items if x]
    if all(c.level == 0 for d in dens for c in d.coeffs):
        R = zring(field)
        acc = R.one
        for d in dens:
            if d.degree > 0:
                acc = acc.lcm(scaled_zt(d)[0])
        return monic_from_zt(acc, field)
    acc = UPoly([field.one], field.zero)
    for x in items:
        if x:
            acc = lcm(acc, x.den)
    return acc


def solution_bounds(L, rhs_list):
    """Candidate denominator and numerator degree bound for L(y) in span(rhs)."""
    field = L.field
    zero = field.zero
    Ln = _normalized(L)
    lead = L.coeffs[-1]
    rhs_list = [g / lead for g in rhs_list if g]
    notes = []
    den = UPoly([field.one], zero)
    singular = _den_lcm(list(Ln.coeffs) + rhs_list, field)
    for factor, _ in irreducible_factors(singular):
        alpha = factor_roots(factor)[0]
        poly, mu = indicial_data(Ln, alpha)
        roots, generic = constant_rational_roots(poly)
        if generic:
            notes.append(f"indicial roots at z = {format_param(alpha)} depend on parameters; "
                         "treated as non-integers")
        cands = [int(q) for q in roots if q.denominator == 1 and q > 0]
        for g in rhs_list:
            cands.append(g.den.multiplicity(factor) + mu)
        bound = max(cands, default=0)
        if bound > 0:
            den = den * factor ** bound
    poly, delta = indicial_data(Ln, INFINITY)
    roots, generic = constant_rational_roots(poly)
    if generic:
        notes.append("indicial roots at infinity depend on parameters; treated as non-integers")
    cands = [int(q) for q in roots if q.denominator == 1]
    for g in rhs_list:
        cands.append(-g.order_at_infinity() - delta)
    if not cands:
        return Bounds(den, -1, tuple(notes))
    return Bounds(den, max(-1, max(cands) + den.degree), tuple(notes))


def _z_rows(polys, base_ring):
    """Coefficient rows (by power of z) of Q[z, t] polynomials, entries in Q[t]."""
    table = {}
    for j, p in enumerate(polys):
        for monom, c in p.terms():
            table.setdefault(monom[0], {}).setdefault(j, {})[monom[1:]] = c
    rows = []
    for d in sorted(table):
        row = [base_ring.zero] * len(polys)
        for j, terms in table[d].items():
            row[j] = base_ring.from_dict(terms)
        rows.append(row)
    return rows


def _ansatz_rows_zt(L, rhs_list, den, ndeg):
    """Polynomial rows of the ansatz system built in Q[z, t], or None.

    Works over one explicit common denominator, so no gcd is taken.
    """
    pairs = [c._pair() for c in L.coeffs]
    rpairs = [g._pair() for g in rhs_list]
    if any(p is None for p in pairs + rpairs) or any(c.level for c in den.coeffs):
        return None
    field = L.field
    R = zring(field)
    z = R.gens[0]
    Dn, Ld = scaled_zt(den)
    Ld = lift_t(R, Ld)
    Bc = R.one
    for _, q in pairs:
        Bc = Bc.lcm(q)
    A = [p * Bc.exquo(q) for p, q in pairs]
    r = L.order
    dpow = [R.one]
    for _ in range(r + 1):
        dpow.append(dpow[-1] * Dn)
    dn1 = Dn.diff(z)
    # (1/Dn)^(m) = E[m] / Dn^(m+1)
    E = [R.one]
    for m in range(r):
        E.append(E[-1].diff(z) * Dn - E[-1] * dn1 * (m + 1))
    # Leibniz: L(z^k/Dn) = sum_j (z^k)^(j) G[j] / (Bc Dn^(r+1))
    G = []
    for j in range(r + 1):
        g = R.zero
        for i in range(j, r + 1):
            if A[i]:
                g += A[i] * E[i - j] * dpow[r - i + j] * comb(i, j)
        G.append(g * Ld)
    nz = len(R.gens)
    cols = []
    for k in range(ndeg + 1):
        total = R.zero
        for j in range(min(k, r) + 1):
            if G[j]:
                total += G[j].mul_monom((k - j,) + (0,) * (nz - 1)) * perm(k, j)
        cols.append(total)
    den_ops = Bc * dpow[r + 1]
    common = den_ops
    for _, q in rpairs:
        common = common.lcm(q)
    scale = common.exquo(den_ops)
    out = [-p * common.exquo(q) for p, q in rpairs] + [c * scale for c in cols]
    return _z_rows(out, field.base.ring)


def _solve_ansatz(L, rhs_list, den, ndeg):
    """Nullspace of (c, p) -> L(p/den) - sum c_j rhs_j, as rref rows."""
    field = L.field
    zero = field.zero
    ncols = len(rhs_list) + ndeg + 1
    if ncols == 0:
        return []
    prows = _ansatz_rows_zt(L, rhs_list, den, ndeg)
    if prows is not None:
        prows = [row for row in prows if any(row)]
        if not prows:
            return [[field.one if i == j else zero for i in range(ncols)] for j in range(ncols)]
        basis = fraction_free_nullspace(prows, ncols, field)
        if not basis:
            return []
        red, _ = rref(basis, ncols)
        return red
    cols = [-g for g in rhs_list]
    for k in range(ndeg + 1):
        y = RatFunc(field, UPoly.monomial(k, zero), den)
        cols.append(apply_operator(L, y))
    ncols = len(cols)
    if ncols == 0:
        return []
    common = _den_lcm(cols, field)
    polys = [c.num * common.exact_div(c.den) if c else UPoly([], zero) for c in cols]
    height = max((p.degree for p in polys), default=-1)
    rows = [[p.coeff(d) for p in polys] for d in range(height + 1)]
    basis = nullspace(rows, ncols, zero, field.one)
    if not basis:
        return []
    red, _ = rref(basis, ncols)
    return red


def _to_ratfunc(field, coeffs, den):
    return RatFunc(field, UPoly(list(coeffs), field.zero), den)


def _split(field, rows, k, den):
    pairs, kernel = [], []
    for row in rows:
        y = _to_ratfunc(field, row[k:], den) if len(row) > k else RatFunc.zero_of(field)
        if any(row[:k]):
            pairs.append((tuple(row[:k]), y))
        else:
            kernel.append(y)
    return pairs, kernel


def parametric_rational_solutions(L, rhs_list):
    """All (a, b) with L(b) = sum a_i rhs_i, modulo the rational kernel of L."""
    field = L.field
    rhs_list = list(rhs_list)
    b = solution_bounds(L, rhs_list)
    rows = _solve_ansatz(L, rhs_list, b.denominator, b.numerator_degree)
    pairs, kernel = _split(field, rows, len(rhs_list), b.denominator)
    return ParametricSolution(tuple(pairs), tuple(kernel), b.assumptions)


def rational_solutions(L, rhs):
    """Every rational y with L(y) = rhs: particular solution plus kernel basis."""
    field = L.field
    rhs_list = [rhs] if rhs else []
    b = solution_bounds(L, rhs_list)
    return _affine(field, L, rhs_list, b.denominator, b.numerator_degree, b.assumptions)


def _affine(field, L, rhs_list, den, ndeg, notes=()):
    rows = _solve_ansatz(L, rhs_list, den, ndeg)
    pairs, kernel = _split(field, rows, len(rhs_list), den)
    if not rhs_list:
        particular = RatFunc.zero_of(field)
    elif pairs:
        particular = pairs[0][1]
    else:
        particular = None
    return AffineSolutionSpace(particular, tuple(kernel), tuple(notes))


def _oracle_ansatz(L, rhs, bound):
    if bound < 1:
        raise ValueError("bound must be at least 1")
    field = L.field
    Ln = _normalized(L)
    scaled = [rhs / L.coeffs[-1]] if rhs else []
    q = squarefree_part(_den_lcm(list(Ln.coeffs) + scaled, field))
    den = q ** bound
    return ([rhs] if rhs else []), den, bound + den.degree


def oracle_rational_solutions(L, rhs, bound):
    """Brute-force ansatz: y = N / q**bound with q the square-free product of
    all input denominators and deg y <= bound."""
    rhs_list, den, ndeg = _oracle_ansatz(L, rhs, bound)
    return _affine(L.field, L, rhs_list, den, ndeg)


def _evaluate_rows(rows, point):
    out = []
    for row in rows:
        vals = []
        for p in row:
            total = QQ.zero
            for monom, c in p.terms():
                term = c
                for v, e in zip(point, monom):
                    if e:
                        term *= v ** e
                total += term
            vals.append(total)
        out.append(vals)
    return out


def certified_agreement(L, rhs, fast, bound, points=4, seed=0):
    """Does ``fast`` equal the brute-force oracle's solution space?

    Cheap exact certificate first: every fast solution lies in the oracle
    ansatz and solves the equation, and the oracle system has rank
    ncols - dim(fast) at some rational parameter point.  Specializing can
    only lower the rank, so this pins the oracle space to span(fast).  If
    no point certifies, the oracle is solved symbolically.  Returns
    (agree, method).
    """
    field = L.field
    rhs_list, den, ndeg = _oracle_ansatz(L, rhs, bound)
    ncols = len(rhs_list) + ndeg + 1
    ys = list(fast.kernel)
    if rhs_list and fast.has_solution:
        ys.append(fast.particular)
    dpoly = RatFunc.from_poly(field, den)
    contained = all((y * dpoly).is_polynomial and (y * dpoly).num.degree <= ndeg for y in ys)
    solves = all(not apply_operator(L, y) for y in fast.kernel)
    if fast.has_solution:
        solves = solves and apply_operator(L, fast.particular) == rhs
    prows = _ansatz_rows_zt(L, rhs_list, den, ndeg) if contained and solves else None
    if prows is not None:
        prows = [row for row in prows if any(row)]
        target = ncols - len(ys)
        rng = random.Random(seed)
        nvars = len(field.base.ring.gens)
        for _ in range(points):
            point = [QQ(rng.randint(-97, 97), rng.randint(1, 13)) for _ in range(nvars)]
            if not prows:
                rank = 0
            else:
                vals = _evaluate_rows(prows, point)
                rank = DomainMatrix(vals, (len(vals), ncols), QQ).rank()
            if rank == target:
                return True, "certified"
    slow = _affine(field, L, rhs_list, den, ndeg)
    return spaces_agree(fast, slow), "symbolic"


def in_span(basis, y):
    """Is y in the parameter-field span of the RatFuncs in ``basis``?"""
    if not y:
        return True
    if not basis:
        return False
    field = y.field
    zero = field.zero
    items = list(basis) + [y]
    common = _den_lcm(items, field)
    polys = [x.num * common.exact_div(x.den) if x else UPoly([], zero) for x in items]
    height = max(p.degree for p in polys)
    rows = [[p.coeff(d) for p in polys] for d in range(height + 1)]
    ncols = len(items)
    from .linalg import rank

    return rank([r[:-1] for r in rows], ncols - 1) == rank(rows, ncols)


def spaces_agree(s1, s2):
    """Equal dimension and mutual containment of two affine solution spaces."""
    if s1.has_solution != s2.has_solution or len(s1.kernel) != len(s2.kernel):
        return False
    if not all(in_span(s2.kernel, k) for k in s1.kernel):
        return False
    if not all(in_span(s1.kernel, k) for k in s2.kernel):
        return False
    if s1.has_solution:
        return in_span(s1.kernel, s1.particular - s2.particular)
    return True
