#!/usr/bin/env python3
"""Run the complete verification catalog and print a human-readable table.

Equivalent to ``upv run all`` plus a summary; exits 0 iff everything passes.
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from upv.checks import CATALOG, RunConfig, RunContext, run_checks  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="13,17,29")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    cfg = RunConfig(primes=tuple(int(p) for p in args.primes.split(",")),
                    seed=args.seed, threads=args.threads)
    ctx = RunContext(cfg)
    t0 = time.perf_counter()
    width = max(len(c.check_id) for c in CATALOG)
    failures = 0
    for check in CATALOG:
        t1 = time.perf_counter()
        rep = run_checks([check], ctx)[0]
        dt = time.perf_counter() - t1
        mark = "ok  " if rep.passed else "FAIL"
        print(f"{mark} {rep.check_id:<{width}} {dt:7.2f}s  {check.claim}")
        if not rep.passed:
            failures += 1
            print(f"     witness: {rep.witness}")
    total = time.perf_counter() - t0
    print(f"\n{len(CATALOG) - failures}/{len(CATALOG)} checks passed "
          f"in {total:.1f}s (primes {cfg.primes}, seed {cfg.seed})")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
