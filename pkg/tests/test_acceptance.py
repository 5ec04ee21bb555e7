"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that ``conftest.py`` prints in the
terminal summary.
"""

import io
import json
import time

import sympy as sp

from paramgalois.cli import main
from paramgalois.galois import assemble_group, certificate_residual, companion, verify_integrability
from paramgalois.harness import HarnessConfig, run_harness
from paramgalois.kovacic import classify
from paramgalois.params import Derivation, ParamElem, ParamField
from paramgalois.parser import parse_expression, parse_form
from paramgalois.ratfunc import RatFunc

RESULTS = {}

BESSEL = ("analyze", "--r", "(4*t^2-1)/(4*z^2)-1", "--params", "t", "--json")
HARMONIC = ("analyze", "--r", "z^2/4+t", "--params", "t", "--json")
CUBIC = ("analyze", "--r", "z^3+t2*z^2+t1*z+t0", "--params", "t0,t1,t2", "--json")
EXAMPLE4 = ("analyze", "--r", "t/z^2", "--params", "t", "--json")
EXAMPLE5 = ("analyze", "--r", "t/z-3/(16*z^2)", "--params", "t", "--json")
COMMANDS = (BESSEL, HARMONIC, CUBIC, EXAMPLE4, EXAMPLE5)

# the t-direction matrix exactly as printed for this example
PRINTED_SYSTEM = {
    "params": ["t"],
    "system": [
        {"derivation": "z", "matrix": [["0", "1"], ["t/z - 3/(16*z^2)", "0"]]},
        {"derivation": {"t": "1"}, "matrix": [["0", "z/t"], ["1 - 3/(16*t*z)", "3/(4*t)"]]},
    ],
}


def _run(argv):
    out = io.StringIO()
    start = time.perf_counter()
    code = main(list(argv), out=out)
    return code, out.getvalue(), time.perf_counter() - start


def _record(n, checks):
    failed = [name for name, ok in checks if not ok]
    RESULTS[n] = (not failed, ", ".join(failed) if failed else "all checks hold")
    assert not failed, f"criterion {n}: failed {failed}"


def test_criterion_1_bessel():
    code, text, dt = _run(BESSEL)
    doc = json.loads(text)
    _record(1, [
        ("exit code", code == 0),
        ("case 4", doc["case"] == 4),
        ("dim D = 0", doc["dspace"]["dim"] == 0),
        ("SL2 full", doc["group"]["string"] == "SL2_full"),
        (f"runtime {dt:.2f}s < 5s", dt < 5),
    ])


def test_criterion_2_harmonic():
    code, text, dt = _run(HARMONIC)
    doc = json.loads(text)
    _record(2, [
        ("exit code", code == 0),
        ("case 4", doc["case"] == 4),
        ("dim D = 0", doc["dspace"]["dim"] == 0),
        (f"runtime {dt:.2f}s < 5s", dt < 5),
    ])


def test_criterion_3_cubic():
    code, text, dt = _run(CUBIC)
    doc = json.loads(text)
    F = ParamField(("t0", "t1", "t2"))
    t0, t1, t2 = F.params()
    coeffs = [parse_form(c, F).constant_value() for c in doc["dspace"]["coefficients"][0]]
    expected = (t1, 2 * t2, F.const(3))
    ratio = coeffs[2] / 3
    proportional = bool(ratio) and all(c == e * ratio for c, e in zip(coeffs, expected))
    b = parse_form(doc["dspace"]["certificates"][0], F)
    r = parse_expression("z^3+t2*z^2+t1*z+t0", F)
    d = Derivation(F, coeffs)
    B = tuple(tuple(parse_form(x, F) for x in row) for row in doc["connections"][0]["matrix"])
    integrable = verify_integrability([(Derivation.z(F), companion(r)), (d, B)])
    _record(3, [
        ("exit code", code == 0),
        ("case 4", doc["case"] == 4),
        ("dim D = 1", doc["dspace"]["dim"] == 1),
        ("basis proportional to 3 d_t2 + 2 t2 d_t1 + t1 d_t0", proportional),
        ("certificate constant", b.is_constant()),
        ("certificate identity", not certificate_residual(r, d, b)),
        ("connection integrable", integrable == [((0, 1), True)]),
        (f"runtime {dt:.2f}s < 10s", dt < 10),
    ])


def test_criterion_4_example4():
    code, text, dt = _run(EXAMPLE4)
    doc = json.loads(text)
    F = ParamField(("t",))
    t = F.param("t")
    w = F.sqrt(4 * t + 1)
    exps = {parse_form(e, F).constant_value() for e in doc["group"]["M"]["exponents"]}
    h = parse_form(doc["group"]["A"]["h"], F)
    # relation as emitted: "c1*d_t(L_t) + c0*L_t = 0"; compare with d_t(w L_t) = w L_t' + w' L_t
    r = parse_expression("t/z^2", F)
    G = assemble_group(classify(r), r)
    rels = G.M.relations
    one_relation = len(rels) == 1 and len(doc["group"]["relations"]) == 1
    multiple = False
    if one_relation:
        rel = rels[0]
        w_own = r.field.sqrt_in_tower(4 * r.field.param("t") + 1)
        c1 = rel.get((0, (1,)), r.field.zero)
        c0 = rel.get((0, (0,)), r.field.zero)
        multiple = bool(c1) and c0 * w_own == c1 * w_own.diff(0)
    _record(4, [
        ("exit code", code == 0),
        ("case 1", doc["case"] == 1),
        ("exponents (1 +- sqrt(1+4t))/2", exps == {(1 + w) / 2, (1 - w) / 2}),
        ("A zero", doc["group"]["A"]["tag"] == "zero"),
        ("h = -z/sqrt(1+4t)", h == RatFunc.z(F) * (-1 / w)),
        ("diagonal", doc["group"]["tag"] == "diagonal"),
        ("single relation d_t(sqrt(1+4t) L_t) = 0 up to a multiple", multiple),
    ])


def _sympy_integrability(system):
    """Independent zero-curvature check of the z/t pair with sympy matrices."""
    z, t = sp.symbols("z t")
    A = sp.Matrix([[sp.sympify(x.replace("^", "**")) for x in row] for row in system[0]["matrix"]])
    B = sp.Matrix([[sp.sympify(x.replace("^", "**")) for x in row] for row in system[1]["matrix"]])
    return sp.simplify(A.diff(t) - B.diff(z) - (B * A - A * B)) == sp.zeros(2, 2)


def test_criterion_5_example5(tmp_path):
    code, text, dt = _run(EXAMPLE5)
    doc = json.loads(text)
    F = ParamField(("t",))
    r = parse_expression("t/z-3/(16*z^2)", F)
    a = parse_form(doc["certificate"]["a"], F)
    b = parse_form(doc["certificate"]["b"], F)
    D = a * a - b * 4
    riccati = not (-a.diff() / 2 + (a * a + D) / 4 - r) and not (D.diff() / (D * 4) - a / 2)
    path = tmp_path / "printed.json"
    path.write_text(json.dumps(PRINTED_SYSTEM))
    vcode, vtext, _ = _run(("verify", "--system", str(path), "--json"))
    printed_ok = vcode == 0 and json.loads(vtext)["integrable"]
    _record(5, [
        ("exit code", code == 0),
        ("case 2", doc["case"] == 2),
        ("a = -1/(2z)", a == parse_expression("-1/(2*z)", F)),
        ("b = 1/(16z^2) - t/z", b == parse_expression("1/(16*z^2) - t/z", F)),
        ("Riccati substitution", riccati),
        ("dihedral", doc["group"]["tag"] == "dihedral"),
        ("M constants", doc["group"]["M"]["tag"] == "constants"),
        ("printed A, B pass verify", printed_ok),
        ("independent sympy check agrees with verify",
         _sympy_integrability(PRINTED_SYSTEM["system"]) == printed_ok),
    ])


PROPERTY_INPUTS = [
    ("t/z^2", ("t",)),
    ("t/z-3/(16*z^2)", ("t",)),
    ("1", ("t",)),
    ("t^2/z^4", ("t",)),
    ("-1/(4*z^2)", ("t",)),
    ("2/z^2", ("t",)),
    ("(4*t^2-1)/(4*z^2)-1", ("t",)),
    ("z^2/4+t", ("t",)),
    ("z^3+t2*z^2+t1*z+t0", ("t0", "t1", "t2")),
    ("(1+t)*z-3/(16*z^2)", ("t",)),
    ("t*z^2 + s", ("t", "s")),
]


def _wronskian_constant(G, r):
    sols = [s.f for s in G.solutions if s.f is not None]
    if G.tag == "dihedral":
        return G.checks["wronskian"]
    if len(sols) < 2:
        return True
    f1, f2 = sols
    d = f2 - f1
    return not (f1 + f2 + d.diff() / d)


def test_criterion_6_property_suites():
    riccati, wronskian, certificate = True, True, True
    for text, names in PROPERTY_INPUTS:
        F = ParamField(names)
        r = parse_expression(text, F)
        v = classify(r)
        G = assemble_group(v, r)
        if v.case in (1, 2):
            riccati &= v.payload.verify(r)
            for s in G.solutions:
                if s.f is not None:
                    riccati &= not (s.f.diff() + s.f * s.f - r)
            wronskian &= _wronskian_constant(G, r)
        if G.dspace is not None:
            for d, b in G.dspace.basis:
                certificate &= not certificate_residual(r, d, b)
    res = run_harness(HarnessConfig(trials=100))
    _record(6, [
        ("(a) Riccati identity", riccati),
        ("(b) Wronskian constant", wronskian),
        ("(c) certificate identity", certificate),
        (f"(d) oracle agreement on {res.trials} instances, "
         f"{len(res.disagreements)} disagreements", res.trials >= 100 and not res.disagreements),
    ])


def _forms(doc):
    out = []
    cert = doc.get("certificate") or {}
    for key in ("riccati", "a", "b"):
        if key in cert:
            out.append(cert[key])
    out += cert.get("coefficients", [])
    out += [s["logderivative"] for s in doc["solutions"] if s["logderivative"]]
    group = doc.get("group") or {}
    out += (group.get("M") or {}).get("exponents", [])
    A = group.get("A") or {}
    if A.get("h"):
        out.append(A["h"])
    out += A.get("residues", [])
    if doc.get("dspace"):
        out += doc["dspace"]["certificates"]
        out += [c for row in doc["dspace"]["coefficients"] for c in row]
    for conn in doc["connections"]:
        out += [x for row in conn["matrix"] for x in row]
    return out


def _objects(x, acc):
    if isinstance(x, (RatFunc, ParamElem)):
        acc.append(x)
    elif isinstance(x, dict):
        for v in x.values():
            _objects(v, acc)
    elif isinstance(x, (list, tuple)):
        for v in x:
            _objects(v, acc)
    return acc


def test_criterion_7_determinism_and_round_trip():
    identical, text_round_trip, object_round_trip = True, True, True
    for argv in COMMANDS:
        first, second = _run(argv)[1], _run(argv)[1]
        identical &= first == second
        doc = json.loads(first)
        F = ParamField(tuple(doc["input"]["params"]))
        for s in _forms(doc):
            text_round_trip &= str(parse_form(s, F)) == s
        r = parse_expression(argv[2], ParamField(tuple(doc["input"]["params"])))
        v = classify(r)
        G = assemble_group(v, r)
        objs = _objects([v.payload.__dict__ if v.payload else {}, G.M.__dict__ if G.M else {},
                         G.A.__dict__ if G.A else {}, [s.f for s in G.solutions],
                         [c.entries for c in G.connections],
                         list(G.dspace.basis) if G.dspace else []], [])
        for x in objs:
            back = parse_form(str(x), r.field)
            if isinstance(x, ParamElem):
                back = back.constant_value()
            object_round_trip &= back == x
    _record(7, [
        ("byte-identical JSON", identical),
        ("print(parse(s)) = s on emitted forms", text_round_trip),
        ("parse(print(x)) = x on emitted objects", object_round_trip),
    ])
