"""Parameterized Galois group descriptions for v'' = r v.

Relations on a group parameter alpha(t) are linear differential
polynomials in the logarithmic derivatives L_ti = d_ti(alpha)/alpha,
stored as ``{(i, orders): coeff}`` with ``orders`` a multi-index over the
parameters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import lcm as int_lcm

from .errors import InvalidCertificate, UnsupportedDenominator, VerificationError
from .factor import partial_fractions
from .forms import format_relation
from .integrate import integrate_rational
from .kovacic import CaseVerdict
from .linalg import nullspace, primitive_scale, rank, rref
from .linode import LinDiffOp, lr_operator
from .params import Derivation
from .ratfunc import RatFunc
from .ratsolve import parametric_rational_solutions, rational_solutions
from .upoly import UPoly

__all__ = [
    "ProductForm",
    "MGroupDesc",
    "ADesc",
    "DerivationSpace",
    "ConnectionMatrix",
    "GroupDescription",
    "product_form",
    "multiplicative_group",
    "unipotent_part",
    "explicit_case1a",
    "case2_group",
    "integrability_space",
    "reconstruct_connection",
    "verify_integrability",
    "assemble_group",
    "span_relations",
    "apply_relation",
]


# -- product forms --------------------------------------------------------------


@dataclass(frozen=True)
class ProductForm:
    """prod (z - alpha)**beta * exp(Q)."""

    pairs: tuple  # ((alpha, beta), ...)
    Q: RatFunc

    def log_derivative(self):
        field = self.Q.field
        total = self.Q.diff()
        for alpha, beta in self.pairs:
            lin = RatFunc.from_poly(field, UPoly([-alpha, field.one], field.zero))
            total = total + RatFunc.const(field, beta) / lin
        return total

    def is_rational(self):
        return not self.Q and all(b.as_integer() is not None for _, b in self.pairs)

    def as_ratfunc(self):
        field = self.Q.field
        g = RatFunc.const(field, 1)
        for alpha, beta in self.pairs:
            lin = RatFunc.from_poly(field, UPoly([-alpha, field.one], field.zero))
            g = g * lin ** beta.as_integer()
        return g

    def __str__(self):
        parts = []
        for alpha, beta in self.pairs:
            base = "z" if not alpha else f"(z - ({alpha}))"
            parts.append(base if beta == 1 else f"{base}^({beta})")
        if self.Q:
            parts.append(f"exp({self.Q})")
        return "*".join(parts) if parts else "1"


def product_form(f):
    """Product form of exp(int f) from the partial fractions of f."""
    x = f.f if hasattr(f, "f") else f
    field = x.field
    poly, terms = partial_fractions(x)
    Q = integrate_rational(RatFunc.from_poly(field, poly)).rational
    pairs = []
    for alpha, k, c in terms:
        if k == 1:
            pairs.append((alpha, c))
        else:
            lin = RatFunc.from_poly(field, UPoly([-alpha, field.one], field.zero))
            Q = Q - RatFunc.const(field, c / (k - 1)) / lin ** (k - 1)
    pf = ProductForm(tuple(pairs), Q)
    if pf.log_derivative() != x:
        raise VerificationError("product form does not reproduce the log-derivative")
    return pf


# -- relations ------------------------------------------------------------------


def _multi_indices(n, order):
    """All multi-indices of total degree ``order``, in lexicographic order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), order):
        idx = [0] * n
        for i in combo:
            idx[i] += 1
        out.append(tuple(idx))
    return sorted(set(out), reverse=True)


def _derive(x, orders, cache):
    key = (id(x), orders)
    if key in cache:
        return cache[key][1]
    if not any(orders):
        return x
    i = next(k for k, o in enumerate(orders) if o)
    lower = list(orders)
    lower[i] -= 1
    val = _derive(x, tuple(lower), cache).diff(i)
    cache[key] = (x, val)
    return val


def apply_relation(relation, Y):
    """Evaluate a relation on the vector Y of logarithmic derivatives."""
    field = Y[0].field
    cache = {}
    total = field.zero
    for (var, orders), c in relation.items():
        total = total + c * _derive(Y[var], orders, cache)
    return total


def span_relations(field, vectors):
    """Independent relations cutting out the constant-coefficient span.

    Y lies in the C-span of ``vectors`` (tuples of ParamElem, one entry per
    parameter) iff every returned relation vanishes on Y.  Derivative rows
    of the vectors are stacked until the rank stabilises (a generalized
    Wronskian); the extra rows then express Y through the span with
    coefficients forced to be constants.
    """
    n = field.nparams
    if n == 0:
        return []
    zero_idx = (0,) * n
    if not vectors:
        return [{(i, zero_idx): field.one} for i in range(n)]
    m = len(vectors)
    cache = {}
    jets = []  # (var, orders) with order <= m
    for order in range(m + 1):
        for idx in _multi_indices(n, order):
            for i in range(n):
                jets.append((i, idx, order))
    table = [[_derive(v[i], idx, cache) for v in vectors] for i, idx, _ in jets]

    def rows_upto(k):
        return [row for row, (_, _, o) in zip(table, jets) if o <= k]

    full = rank(rows_upto(m - 1), m)
    k0 = next(k for k in range(m) if rank(rows_upto(k), m) == full)
    _, cols = rref(rows_upto(k0), m)
    sub = [[row[c] for c in cols] for row in rows_upto(k0)]
    # independent rows of the column-restricted block
    _, picked = rref([list(col) for col in zip(*sub)], len(sub))
    basis_rows = [sub[p] for p in picked]
    basis_jets = [jets[p] for p in picked]
    r = len(cols)
    relations = []
    for row, jet in zip(table, jets):
        if jet[2] > k0 + 1 or jet in basis_jets:
            continue
        target = [row[c] for c in cols]
        # w with w . basis_rows = target
        system = [[basis_rows[k][c] for k in range(r)] + [-target[c]] for c in range(r)]
        sol = nullspace(system, r + 1, field.zero, field.one)
        w = [x / sol[0][r] for x in sol[0][:r]]
        rel = {(jet[0], jet[1]): field.one}
        for wk, bj in zip(w, basis_jets):
            if wk:
                rel[(bj[0], bj[1])] = -wk
        relations.append(rel)
    return _independent(field, relations)


def _jet_key(jet):
    var, orders = jet
    return (-sum(orders), tuple(-o for o in orders), var)


def _independent(field, relations):
    if not relations:
        return []
    keys = sorted({k for rel in relations for k in rel}, key=_jet_key)
    rows = [[rel.get(k, field.zero) for k in keys] for rel in relations]
    red, _ = rref(rows, len(keys))
    out = []
    for row in red:
        c = primitive_scale(row)
        out.append({k: v * c for k, v in zip(keys, row) if v})
    return out


# -- group pieces ---------------------------------------------------------------


@dataclass(frozen=True)
class MGroupDesc:
    """tag: trivial | finite-cyclic | constants | exp-span | relations | implicit."""

    tag: str
    q: int = 1
    exponents: tuple = ()
    relations: tuple = ()
    notes: tuple = ()

    def relation_strings(self, field):
        if self.tag == "finite-cyclic":
            return [f"alpha^{self.q} = 1"]
        if self.tag == "trivial":
            return ["alpha = 1"]
        return [format_relation(field, rel) for rel in self.relations]


def _classify_exponents(betas):
    rational, const_irr, moving = [], [], []
    for b in betas:
        if b.as_rational() is not None:
            rational.append(b.as_rational())
        elif b.is_constant():
            const_irr.append(b)
        else:
            moving.append(b)
    return rational, const_irr, moving


def multiplicative_group(pf, extra=()):
    """M from the exponents of one or more product forms."""
    forms = (pf,) + tuple(extra)
    field = pf.Q.field
    betas = [b for form in forms for _, b in form.pairs]
    has_exp = any(bool(form.Q) for form in forms)
    rational, const_irr, moving = _classify_exponents(betas)
    if not has_exp and not const_irr and not moving:
        q = 1
        for p in rational:
            q = int_lcm(q, p.denominator)
        return MGroupDesc("trivial" if q == 1 else "finite-cyclic", q=q)
    grads = []
    for b in moving:
        grads.append(tuple(b.diff(i) for i in range(field.nparams)))
    rels = span_relations(field, grads)
    if not moving:
        return MGroupDesc("constants", relations=tuple(rels))
    return MGroupDesc("exp-span", exponents=tuple(moving), relations=tuple(rels))


@dataclass(frozen=True)
class ADesc:
    """tag: zero | full-constants | span | implicit."""

    tag: str
    h: object = None
    residues: tuple = ()
    relations: tuple = ()
    notes: tuple = ()


@dataclass(frozen=True)
class SolutionInfo:
    """One solution: exp(int f), or an explicit closed form."""

    f: object  # RatFunc log-derivative, or None
    form: str


def unipotent_part(f, pf):
    """(ADesc, second solution or None) from h' - 2 f h = 1."""
    x = f.f if hasattr(f, "f") else f
    field = x.field
    op = LinDiffOp((x * -2, RatFunc.const(field, 1)))
    space = rational_solutions(op, RatFunc.const(field, 1))
    if space.has_solution:
        h = space.particular
        f2 = x + h.inverse()
        return ADesc("zero", h=h), SolutionInfo(f2, f"({h})*exp(-int({x}))")
    if x.is_param_free():
        return ADesc("full-constants"), None
    note = ("A is the set of additive constants u for which every differential "
            "polynomial relation of int(g^-2) over the base field is preserved; "
            "not computed")
    return ADesc("implicit", notes=(note,)), None


# -- containers -----------------------------------------------------------------


@dataclass(frozen=True)
class DerivationSpace:
    basis: tuple  # ((Derivation, certificate RatFunc), ...)
    kernel: tuple = ()
    assumptions: tuple = ()

    @property
    def dim(self):
        return len(self.basis)


@dataclass(frozen=True)
class ConnectionMatrix:
    derivation: Derivation
    entries: tuple  # ((a, b), (c, d)) of RatFunc

    def trace(self):
        return self.entries[0][0] + self.entries[1][1]


@dataclass(frozen=True)
class GroupDescription:
    """tag: trivial | borel | diagonal | dihedral | finite | dense."""

    tag: str
    M: object = None
    A: object = None
    dspace: object = None
    witness: object = None
    solutions: tuple = ()
    connections: tuple = ()
    checks: dict = dc_field(default_factory=dict)
    notes: tuple = ()

    def group_string(self):
        if self.tag == "dense":
            return "SL2_full" if self.dspace.dim == 0 else "SL2_constants"
        return self.tag


# -- case 1 ---------------------------------------------------------------------


def explicit_case1a(g):
    """Closed-form basis {g, g*int(g^-2)} when g is rational in z."""
    field = g.field
    I = integrate_rational(g ** -2)
    wronskian_ok = I.derivative() == g ** -2
    if not I.logs:
        y2 = g * I.rational
        sols = (SolutionInfo(g.diff() / g, str(g)), SolutionInfo(y2.diff() / y2 if y2 else None, str(y2)))
        return GroupDescription(
            "trivial",
            M=MGroupDesc("trivial"),
            A=ADesc("zero"),
            solutions=sols,
            checks={"wronskian": wronskian_ok},
        )
    logs = " + ".join(f"({c})*log(z - ({a}))" for a, c in I.logs)
    second = f"({g})*({I.rational} + {logs})"
    residues = tuple(c for _, c in I.logs)
    if all(c.is_constant() for c in residues):
        A = ADesc("full-constants", residues=residues)
    else:
        rels = span_relations(field, [(c,) for c in residues]) if field.nparams == 1 else []
        A = ADesc("span", residues=residues, relations=tuple(rels))
    sols = (SolutionInfo(g.diff() / g, str(g)), SolutionInfo(None, second))
    return GroupDescription(
        "borel",
        M=MGroupDesc("trivial"),
        A=A,
        solutions=sols,
        checks={"wronskian": wronskian_ok},
    )


def _case1_group(r, f):
    pf = product_form(f)
    checks = {"riccati": f.verify(r)}
    if pf.is_rational():
        desc = explicit_case1a(pf.as_ratfunc())
        desc.checks.update(checks)
        return desc
    A, second = unipotent_part(f, pf)
    first = SolutionInfo(f.f, f"exp(int({f.f}))")
    if A.tag == "zero":
        pf2 = product_form(second.f)
        M = multiplicative_group(pf, (pf2,))
        checks["riccati_second"] = not (second.f.diff() + second.f * second.f - r)
        checks["wronskian"] = A.h * (second.f - f.f) == RatFunc.const(r.field, 1)
        sols = (SolutionInfo(f.f, str(pf)), SolutionInfo(second.f, str(pf2)))
        return GroupDescription("diagonal", M=M, A=A, solutions=sols, checks=checks)
    M = multiplicative_group(pf)
    return GroupDescription("borel", M=M, A=A, solutions=(first,), checks=checks, notes=A.notes)


# -- case 2 ---------------------------------------------------------------------


def case2_group(q, r):
    """Dihedral group; M from integrability of d_ti int f in K(z, w)."""
    field = r.field
    n = field.nparams
    D = q.discriminant
    checks = {"riccati": q.verify(r), "wronskian": not (-q.a + D.diff() / (D * 2))}
    half_a, quarter_d = -q.a / 2, D / 4
    sols = (
        SolutionInfo(None, f"exp(int({half_a} + sqrt({quarter_d})))"),
        SolutionInfo(None, f"exp(int({half_a} - sqrt({quarter_d})))"),
    )
    if n == 0:
        return GroupDescription("dihedral", M=MGroupDesc("constants"), solutions=sols, checks=checks)
    try:
        u = [D.diff_param(i) / (D * 2) for i in range(n)]
        op = LinDiffOp((D.diff() / (D * 2), RatFunc.const(field, 1)))
        zero_idx = (0,) * n
        rhs = [ui / 2 for ui in u]
        keys = [(i, zero_idx) for i in range(n)]
        sol = parametric_rational_solutions(op, rhs)
        rels = [{k: c for k, c in zip(keys, a) if c} for a, _ in sol.pairs]
        notes = ()
        if len(rels) < n:
            for i in range(n):
                for j in range(i, n):
                    rhs.append((u[i].diff_param(j) + u[i] * u[j]) / 2)
                    e = [0] * n
                    e[j] += 1
                    keys.append((i, tuple(e)))
            sol = parametric_rational_solutions(op, rhs)
            rels = [{k: c for k, c in zip(keys, a) if c} for a, _ in sol.pairs]
            notes = ("relations searched up to order 1 only",)
        rels = _independent(field, rels)
        order0 = [rel for rel in rels if all(not any(k[1]) for k in rel)]
        if len(order0) == n:
            M = MGroupDesc("constants", relations=tuple(order0))
        else:
            M = MGroupDesc("relations", relations=tuple(rels), notes=notes)
    except UnsupportedDenominator as exc:
        note = f"unsupported radicand: {exc}; M left implicit"
        M = MGroupDesc("implicit", notes=(note,))
        return GroupDescription("dihedral", M=M, solutions=sols, checks=checks, notes=(note,))
    return GroupDescription("dihedral", M=M, solutions=sols, checks=checks, notes=M.notes)


# -- case 4 ---------------------------------------------------------------------


def certificate_residual(r, d, b):
    """1/2 b''' - 2 r b' - r' b + d(r)."""
    b1 = b.diff()
    return b1.diff().diff() / 2 - r * b1 * 2 - r.diff() * b + r.apply_derivation(d)


def integrability_space(r):
    """Basis of the derivations admitting a rational certificate b."""
    field = r.field
    n = field.nparams
    L = lr_operator(r)
    sol = parametric_rational_solutions(L, [-r.diff_param(i) for i in range(n)])
    basis = []
    for a, b in sol.pairs:
        c = primitive_scale(a)
        d = Derivation(field, [x * c for x in a])
        basis.append((d, b * c))
    return DerivationSpace(tuple(basis), sol.kernel, sol.assumptions)


def reconstruct_connection(r, d, b):
    """Trace-free A' with d Y = A' Y compatible with d_z Y = [[0,1],[r,0]] Y."""
    if certificate_residual(r, d, b):
        raise InvalidCertificate("invalid certificate")
    b1 = b.diff()
    entries = ((-b1 / 2, b), (b * r - b1.diff() / 2, b1 / 2))
    conn = ConnectionMatrix(d, entries)
    report = verify_integrability([(Derivation.z(r.field), companion(r)), (d, entries)])
    if not all(ok for _, ok in report):
        raise InvalidCertificate("invalid certificate")
    return conn


def companion(r):
    field = r.field
    return ((RatFunc.zero_of(field), RatFunc.const(field, 1)), (r, RatFunc.zero_of(field)))


def _matmul(X, Y):
    return tuple(
        tuple(X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)) for i in range(2)
    )


def verify_integrability(system):
    """[((i, j), ok)] for every pair: d_j A_i - d_i A_j = A_j A_i - A_i A_j."""
    mats = []
    for d, M in system:
        M = M.entries if isinstance(M, ConnectionMatrix) else M
        if len(M) != 2 or any(len(row) != 2 for row in M):
            raise ValueError("connection matrices must be 2x2")
        mats.append((d, M))
    report = []
    for (i, (di, Ai)), (j, (dj, Aj)) in itertools.combinations(enumerate(mats), 2):
        if not di.commutes_with(dj):
            report.append(((i, j), False))
            continue
        left = tuple(
            tuple(Ai[k][l].apply_derivation(dj) - Aj[k][l].apply_derivation(di) for l in range(2))
            for k in range(2)
        )
        P, Q = _matmul(Aj, Ai), _matmul(Ai, Aj)
        ok = all(not (left[k][l] - (P[k][l] - Q[k][l])) for k in range(2) for l in range(2))
        report.append(((i, j), ok))
    return report


def _dense_group(r):
    space = integrability_space(r)
    conns = []
    checks = {"certificates": True, "integrability": True}
    for d, b in space.basis:
        checks["certificates"] &= not certificate_residual(r, d, b)
        conn = reconstruct_connection(r, d, b)
        conns.append(conn)
    return GroupDescription("dense", dspace=space, connections=tuple(conns), checks=checks,
                            notes=space.assumptions)


def assemble_group(verdict: CaseVerdict, r):
    """Group description matching the Kovacic case of ``verdict``."""
    if verdict.case == 1:
        return _case1_group(r, verdict.payload)
    if verdict.case == 2:
        return case2_group(verdict.payload, r)
    if verdict.case == 3:
        ok = verdict.payload.verify(r)
        return GroupDescription("finite", witness=verdict.payload, checks={"witness": ok},
                                notes=("finite primitive group; not identified",))
    return _dense_group(r)

