"""Randomized agreement run: indicial-bound rational solver against the brute-force oracle."""

import argparse
import time

from paramgalois.harness import HarnessConfig, run_harness


def main():
    defaults = HarnessConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=defaults.trials)
    ap.add_argument("--seed", type=int, default=defaults.seed)
    ap.add_argument("--bound", type=int, default=defaults.bound)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()
    cfg = HarnessConfig(trials=args.trials, seed=args.seed, bound=args.bound)

    def progress(k, inst, ok):
        if args.verbose or not ok:
            print(f"{k:4d} {'ok' if ok else 'DISAGREE'} {inst.describe()}")

    start = time.perf_counter()
    res = run_harness(cfg, progress)
    print(f"trials={res.trials} solved={res.with_solution} kernel={res.with_kernel} "
          f"symbolic_fallbacks={res.symbolic} disagreements={len(res.disagreements)} "
          f"time={time.perf_counter() - start:.1f}s")
    raise SystemExit(1 if res.disagreements else 0)


if __name__ == "__main__":
    main()
