"""Randomized agreement harness: indicial-bound solver vs brute-force oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linode import LinDiffOp, apply_operator
from .params import ParamField
from .ratfunc import RatFunc
from .ratsolve import certified_agreement, rational_solutions
from .upoly import UPoly

__all__ = ["HarnessConfig", "Instance", "random_instance", "run_harness"]


@dataclass(frozen=True)
class HarnessConfig:
    trials: int = 100
    seed: int = 20240917
    bound: int = 6
    max_params: int = 2
    max_pole_order: int = 3
    max_degree: int = 4


@dataclass(frozen=True)
class Instance:
    kind: str
    op: LinDiffOp
    rhs: RatFunc

    def describe(self):
        ops = ", ".join(str(c) for c in self.op.coeffs)
        return f"[{self.kind}] L = ({ops}), rhs = {self.rhs}"


def _small(rng, field, params, allow_param=True):
    c = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2]))
    x = field.const(c)
    if allow_param and params and rng.random() < 0.4:
        x = x + field.param(rng.choice(params)) * rng.choice([1, -1, 2])
    return x


def _locations(rng, field, params, k):
    pool = [field.const(0), field.const(1), field.const(-2)]
    for p in params:
        pool += [field.param(p), field.param(p) + 1]
    rng.shuffle(pool)
    return pool[:k]


def _lin(field, a):
    return RatFunc.from_poly(field, UPoly([-a, field.one], field.zero))


def _random_rational(rng, field, params, locs, cfg):
    deg = rng.randint(0, cfg.max_degree)
    num = UPoly([_small(rng, field, params) for _ in range(deg + 1)], field.zero)
    if not num:
        num = UPoly([field.one], field.zero)
    y = RatFunc.from_poly(field, num)
    for a in locs:
        k = rng.randint(0, cfg.max_pole_order)
        if k:
            y = y / _lin(field, a) ** k
    return y


def random_instance(rng, cfg=HarnessConfig()):
    nparams = rng.randint(0, cfg.max_params)
    names = ("t", "s")[:nparams]
    field = ParamField(names)
    locs = _locations(rng, field, names, rng.randint(0, 2))
    one = RatFunc.const(field, 1)
    kind = rng.choice(["random", "euler", "wronskian"])
    if kind == "euler" and locs:
        # (z-a)^2 d^2 + p (z-a) d + q with integer local exponents m1, m2
        a = locs[0]
        m1, m2 = rng.randint(-3, 3), rng.randint(-3, 3)
        lin = _lin(field, a)
        p = 1 - m1 - m2
        q = m1 * m2
        op = LinDiffOp((RatFunc.const(field, q), lin * p, lin * lin))
    elif kind == "wronskian" and len(locs) == 2:
        a, b = locs
        ea = rng.choice([-3, -2, -1, 1, 2])
        eb = rng.choice([-2, -1, 1, 3])
        y1, y2 = _lin(field, a) ** ea, _lin(field, b) ** eb
        d1, d2 = y1.diff(), y2.diff()
        dd1, dd2 = d1.diff(), d2.diff()
        w = y1 * d2 - y2 * d1
        op = LinDiffOp((d1 * dd2 - d2 * dd1, -(y1 * dd2 - y2 * dd1), w))
    else:
        kind = "random"
        order = rng.randint(1, 2)
        coeffs = []
        for _ in range(order):
            c = RatFunc.const(field, _small(rng, field, names))
            for a in locs:
                if rng.random() < 0.5:
                    c = c / _lin(field, a) ** rng.randint(1, 2)
            coeffs.append(c)
        op = LinDiffOp(tuple(coeffs) + (one,))
    y0 = _random_rational(rng, field, names, locs, cfg)
    mode = rng.random()
    if mode < 0.6:
        rhs = apply_operator(op, y0)
    elif mode < 0.8:
        rhs = RatFunc.zero_of(field)
    else:
        rhs = y0
    return Instance(kind, op, rhs)


@dataclass
class HarnessResult:
    trials: int
    disagreements: list
    with_solution: int
    with_kernel: int
    symbolic: int = 0


def run_harness(cfg=HarnessConfig(), progress=None):
    rng = random.Random(cfg.seed)
    bad = []
    with_solution = with_kernel = symbolic = 0
    for k in range(cfg.trials):
        inst = random_instance(rng, cfg)
        fast = rational_solutions(inst.op, inst.rhs)
        ok, method = certified_agreement(inst.op, inst.rhs, fast, cfg.bound, seed=k)
        symbolic += method == "symbolic"
        sound = all(not apply_operator(inst.op, y) for y in fast.kernel)
        if fast.has_solution:
            sound = sound and apply_operator(inst.op, fast.particular) == inst.rhs
            with_solution += 1
        if fast.kernel:
            with_kernel += 1
        if not (ok and sound):
            bad.append(inst.describe())
        if progress:
            progress(k, inst, ok and sound)
    return HarnessResult(cfg.trials, bad, with_solution, with_kernel, symbolic)
