"""Command-line front end.

Exit codes: 0 success, 1 negative verdict (non-integrable system), 2 parse
error, 3 unsupported feature, 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParamGaloisError, ParseError
from .galois import verify_integrability
from .harness import HarnessConfig, run_harness
from .linode import LinDiffOp
from .params import Derivation, ParamField
from .parser import parse_expression, parse_form, parse_param
from .pipeline import InputSpec, run_dspace, run_liouvillian, run_pipeline
from .ratsolve import rational_solutions

__all__ = ["main", "build_parser", "load_system"]


def _params(text):
    names = tuple(p.strip() for p in text.split(",") if p.strip()) if text else ()
    try:
        ParamField(names)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return names


def _emit(report, as_json, out):
    out.write(report.to_json() if as_json else report.to_text())


def _cmd_analyze(args, out):
    _emit(run_pipeline(InputSpec(args.r, _params(args.params))), args.json, out)
    return 0


def _cmd_liouvillian(args, out):
    _, _, report = run_liouvillian(InputSpec(args.r, _params(args.params)))
    _emit(report, args.json, out)
    return 0


def _cmd_dspace(args, out):
    _emit(run_dspace(InputSpec(args.r, _params(args.params))), args.json, out)
    return 0


def _derivation(spec, field):
    if spec == "z":
        return Derivation.z(field)
    if not isinstance(spec, dict):
        raise ParseError(f"bad derivation {spec!r}")
    unknown = set(spec) - set(field.names)
    if unknown:
        raise ParseError(f"unknown parameter {sorted(unknown)[0]!r} in derivation")
    return Derivation(field, [parse_param(str(spec.get(n, "0")), field) for n in field.names])


def load_system(data):
    """Parse {"params": [...], "system": [{"derivation", "matrix"}]}."""
    try:
        field = ParamField(tuple(data.get("params", ())))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    system = []
    for item in data.get("system", ()):
        d = _derivation(item["derivation"], field)
        rows = item["matrix"]
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise ParseError("connection matrices must be 2x2")
        system.append((d, tuple(tuple(parse_form(str(x), field) for x in row) for row in rows)))
    return field, system


def _cmd_verify(args, out):
    with open(args.system, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    _, system = load_system(data)
    result = verify_integrability(system)
    pairs = [{"pair": list(ij), "integrable": ok} for ij, ok in result]
    integrable = all(ok for _, ok in result)
    if args.json:
        out.write(json.dumps({"integrable": integrable, "pairs": pairs}, indent=2, sort_keys=True) + "\n")
    else:
        for p in pairs:
            i, j = p["pair"]
            out.write(f"pair ({i}, {j}): {'ok' if p['integrable'] else 'FAILED'}\n")
        out.write(f"integrable: {'yes' if integrable else 'no'}\n")
    return 0 if integrable else 1


def _cmd_solve(args, out):
    names = _params(args.params)
    field = ParamField(names)
    coeffs = [parse_expression(c, field) for c in args.op.split(",")]
    if not any(coeffs):
        raise ParseError("operator must have a nonzero coefficient")
    L = LinDiffOp(tuple(coeffs))
    rhs = parse_expression(args.rhs, field)
    sol = rational_solutions(L, rhs)
    doc = {
        "operator": [str(c) for c in L.coeffs],
        "rhs": str(rhs),
        "particular": None if sol.particular is None else str(sol.particular),
        "kernel": [str(k) for k in sol.kernel],
        "diagnostics": list(sol.assumptions),
    }
    if args.json:
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(f"particular: {doc['particular'] if sol.has_solution else 'none'}\n")
        for k in doc["kernel"]:
            out.write(f"kernel: {k}\n")
        for note in doc["diagnostics"]:
            out.write(f"note: {note}\n")
    return 0


def _cmd_oracle(args, out):
    cfg = HarnessConfig(trials=args.trials, seed=args.seed, bound=args.bound)

    def progress(k, inst, ok):
        if args.verbose:
            out.write(f"{k:4d} {'ok' if ok else 'DISAGREE'} {inst.describe()}\n")

    res = run_harness(cfg, progress)
    out.write(f"trials: {res.trials}\n")
    out.write(f"with particular solution: {res.with_solution}\n")
    out.write(f"with nonzero kernel: {res.with_kernel}\n")
    out.write(f"disagreements: {len(res.disagreements)}\n")
    for d in res.disagreements:
        out.write(f"  {d}\n")
    return 4 if res.disagreements else 0


def build_parser():
    ap = argparse.ArgumentParser(prog="paramgalois",
                                 description="Parameterized Galois groups of y'' = r(z, t) y.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_r(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--r", required=True, help="rational function r(z, t)")
        p.add_argument("--params", default="", help="comma-separated parameter names")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(func=fn)

    with_r("analyze", _cmd_analyze, "full group computation")
    with_r("liouvillian", _cmd_liouvillian, "Kovacic classification only")
    with_r("dspace", _cmd_dspace, "integrability space and connections")

    p = sub.add_parser("verify", help="check integrability of a system file")
    p.add_argument("--system", required=True, help="JSON system file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("solve", help="rational solutions of L(y) = rhs")
    p.add_argument("--op", required=True, help="coefficients c0,c1,... of sum c_i d_z^i")
    p.add_argument("--rhs", default="0")
    p.add_argument("--params", default="")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("oracle", help="randomized solver vs brute-force comparison")
    p.add_argument("--bound", type=int, default=HarnessConfig.bound)
    p.add_argument("--trials", type=int, default=HarnessConfig.trials)
    p.add_argument("--seed", type=int, default=HarnessConfig.seed)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_cmd_oracle)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParamGaloisError as exc:
        print(f"error [{exc.tag}]: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error [io]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
