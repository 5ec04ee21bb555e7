"""Gauss-Jordan elimination over an exact field (ParamElem entries)."""

from __future__ import annotations


def _simple(x):
    return x.level == 0 and x.raw.numer.is_ground and x.raw.denom.is_ground


def rref(rows, ncols):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows if any(r)]
    pivots = []
    rank = 0
    for col in range(ncols):
        cand = [i for i in range(rank, len(rows)) if rows[i][col]]
        if not cand:
            continue
        best = next((i for i in cand if _simple(rows[i][col])), cand[0])
        rows[rank], rows[best] = rows[best], rows[rank]
        prow = rows[rank]
        inv = prow[col].inverse()
        prow = [x * inv if x else x for x in prow]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a - c * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _polynomial_rows(rows):
    """Rows scaled to polynomial entries over Q[t], or None off the base level."""
    out = []
    for row in rows:
        if any(x.level for x in row):
            return None
        den = None
        for x in row:
            if x:
                den = x.raw.denom if den is None else den.lcm(x.raw.denom)
        if den is None:
            continue
        out.append([x.raw.numer * den.exquo(x.raw.denom) if x else den.ring.zero for x in row])
    return out


def fraction_free_nullspace(prows, ncols, field):
    from sympy.polys.matrices import DomainMatrix

    ring = field.base.ring
    dom = ring.to_domain()
    M = DomainMatrix([[dom.convert(e) for e in row] for row in prows], (len(prows), ncols), dom)
    N = M.nullspace()
    basis = []
    for vec in N.to_list():
        basis.append([field.from_base(field.base(ring(e))) for e in vec])
    return basis


def nullspace(rows, ncols, zero, one):
    """Basis of {x : rows @ x = 0}."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    if len(rows) > 4:
        prows = _polynomial_rows(rows)
        if prows is not None:
            basis = fraction_free_nullspace(prows, ncols, zero.field)
            if not basis:
                return []
            red, pivots = rref(basis, ncols)
            return red
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in zip(red, pivots):
            if r[f]:
                v[p] = -r[f]
        basis.append(v)
    return basis


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def primitive_scale(vec):
    """A nonzero factor c making c*vec a primitive polynomial vector.

    Only base-level entries are cleared; with tower entries the vector is
    scaled to make its first nonzero entry 1.
    """
    nonzero = [x for x in vec if x]
    if not nonzero:
        raise ValueError("zero vector")
    field = nonzero[0].field
    if any(x.level for x in nonzero):
        return nonzero[0].inverse()
    den = nonzero[0].raw.denom
    for x in nonzero[1:]:
        den = den.lcm(x.raw.denom)
    nums = [x.raw.numer * den.exquo(x.raw.denom) for x in nonzero]
    g = nums[0]
    for p in nums[1:]:
        g = g.gcd(p)
    lead = nums[0].exquo(g)
    if lead.LC < 0:
        g = -g
    base = field.base
    return field.from_base(base(den) / base(g))
