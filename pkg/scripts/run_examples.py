"""Run the worked examples through the pipeline and print a one-line summary each.

Usage: python3 scripts/run_examples.py [--json-dir DIR]
"""

import argparse
import json
import pathlib
import time
from dataclasses import dataclass

from paramgalois.pipeline import InputSpec, run_pipeline


@dataclass(frozen=True)
class Example:
    name: str
    r: str
    params: tuple


EXAMPLES = (
    Example("bessel", "(4*t^2-1)/(4*z^2)-1", ("t",)),
    Example("harmonic", "z^2/4+t", ("t",)),
    Example("cubic", "z^3+t2*z^2+t1*z+t0", ("t0", "t1", "t2")),
    Example("euler", "t/z^2", ("t",)),
    Example("sqrt-exp", "t/z-3/(16*z^2)", ("t",)),
    Example("airy", "z", ()),
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json-dir", type=pathlib.Path, help="write one report per example here")
    args = ap.parse_args()
    if args.json_dir:
        args.json_dir.mkdir(parents=True, exist_ok=True)
    for ex in EXAMPLES:
        start = time.perf_counter()
        report = run_pipeline(InputSpec(ex.r, ex.params))
        dt = time.perf_counter() - start
        dim = report.dspace["dim"] if report.dspace else "-"
        group = report.group["string"] if report.group else "-"
        checks = "ok" if all(report.checks.values()) else "FAILED"
        print(f"{ex.name:10s} case={report.case} dimD={dim} group={group} checks={checks} {dt:.2f}s")
        if args.json_dir:
            (args.json_dir / f"{ex.name}.json").write_text(report.to_json())


if __name__ == "__main__":
    main()
