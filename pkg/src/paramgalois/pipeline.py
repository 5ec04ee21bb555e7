"""Orchestration from input text to a serializable report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .forms import format_derivation, format_param
from .galois import assemble_group, integrability_space, reconstruct_connection
from .kovacic import classify
from .params import ParamField
from .parser import parse_expression

__all__ = ["InputSpec", "Report", "run_pipeline", "run_liouvillian", "run_dspace"]


@dataclass(frozen=True)
class InputSpec:
    expression: str
    params: tuple = ()
    output: str = "text"


@dataclass
class Report:
    input: dict
    case: object = None
    excluded: list = field(default_factory=list)
    certificate: dict = None
    solutions: list = field(default_factory=list)
    group: dict = None
    dspace: dict = None
    connections: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)

    def to_dict(self):
        return {
            "input": self.input,
            "case": self.case,
            "excluded": self.excluded,
            "certificate": self.certificate,
            "solutions": self.solutions,
            "group": self.group,
            "dspace": self.dspace,
            "connections": self.connections,
            "checks": self.checks,
            "diagnostics": self.diagnostics,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=True) + "\n"

    def to_text(self):
        lines = [f"r = {self.input['r']}", f"parameters: {', '.join(self.input['params']) or '-'}"]
        if self.case is not None:
            lines.append(f"case: {self.case}")
        for key, value in (self.certificate or {}).items():
            if isinstance(value, list):
                value = "; ".join(value)
            lines.append(f"certificate {key}: {value}")
        for k, sol in enumerate(self.solutions, 1):
            lines.append(f"solution {k}: {sol['form']}")
        if self.group:
            lines.append(f"group: {self.group['string']}")
            for name in ("M", "A"):
                part = self.group.get(name)
                if part:
                    extra = "".join(f" {k}={v}" for k, v in part.items() if k not in ("tag", "relations") and v)
                    lines.append(f"  {name}: {part['tag']}{extra}")
            for rel in self.group.get("relations", []):
                lines.append(f"  relation: {rel}")
        if self.dspace is not None:
            lines.append(f"dim D: {self.dspace['dim']}")
            for d, b in zip(self.dspace["basis"], self.dspace["certificates"]):
                lines.append(f"  {d}  with b = {b}")
        for conn in self.connections:
            rows = "; ".join(", ".join(row) for row in conn["matrix"])
            lines.append(f"connection {conn['derivation']}: [{rows}]")
        for name in sorted(self.checks):
            lines.append(f"check {name}: {'ok' if self.checks[name] else 'FAILED'}")
        for note in self.excluded:
            lines.append(f"note: {note}")
        for note in self.diagnostics:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def _setup(spec):
    params = ParamField(tuple(spec.params))
    r = parse_expression(spec.expression, params)
    report = Report(input={"r": str(r), "params": list(params.names)})
    return r, report


def _certificate(verdict):
    p = verdict.payload
    if verdict.case == 1:
        return {"riccati": str(p.f)}
    if verdict.case == 2:
        return {"a": str(p.a), "b": str(p.b)}
    if verdict.case == 3:
        return {"degree": p.n, "coefficients": [str(c) for c in p.coeffs]}
    return None


def _dspace_dict(space):
    return {
        "dim": space.dim,
        "basis": [format_derivation(d) for d, _ in space.basis],
        "coefficients": [[format_param(a) for a in d.coeffs] for d, _ in space.basis],
        "certificates": [str(b) for _, b in space.basis],
    }


def _connection_dict(conn):
    return {
        "derivation": format_derivation(conn.derivation),
        "matrix": [[str(x) for x in row] for row in conn.entries],
    }


def _group_dict(G, field):
    out = {"tag": G.tag, "string": G.group_string(), "relations": []}
    if G.M is not None:
        out["M"] = {
            "tag": G.M.tag,
            "q": G.M.q,
            "exponents": [format_param(e) for e in G.M.exponents],
        }
        out["relations"] = G.M.relation_strings(field)
    if G.A is not None:
        out["A"] = {
            "tag": G.A.tag,
            "h": None if G.A.h is None else str(G.A.h),
            "residues": [format_param(c) for c in G.A.residues],
        }
    return out


def run_liouvillian(spec):
    r, report = _setup(spec)
    verdict = classify(r)
    report.case = verdict.case
    report.excluded = list(verdict.trace)
    report.certificate = _certificate(verdict)
    if verdict.case in (1, 2, 3):
        report.checks["payload"] = verdict.payload.verify(r)
    return r, verdict, report


def run_pipeline(spec):
    """Classify, build the group description, and collect certificates."""
    r, verdict, report = run_liouvillian(spec)
    G = assemble_group(verdict, r)
    report.solutions = [{"logderivative": None if s.f is None else str(s.f), "form": s.form}
                        for s in G.solutions]
    report.group = _group_dict(G, r.field)
    if G.dspace is not None:
        report.dspace = _dspace_dict(G.dspace)
    report.connections = [_connection_dict(c) for c in G.connections]
    report.checks.update({k: bool(v) for k, v in G.checks.items()})
    notes = list(G.notes)
    if G.M is not None:
        notes += [n for n in G.M.notes if n not in notes]
    report.diagnostics = notes
    return report


def run_dspace(spec):
    """Integrability space only, whatever the Kovacic case."""
    r, report = _setup(spec)
    space = integrability_space(r)
    report.dspace = _dspace_dict(space)
    report.connections = [_connection_dict(reconstruct_connection(r, d, b)) for d, b in space.basis]
    report.diagnostics = list(space.assumptions)
    return report
