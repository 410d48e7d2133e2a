#!/usr/bin/env python3
"""Run the default 500-trial theorem-regime campaign and write the report.

Usage: python scripts/run_fuzz_campaign.py [--trials N] [--seed S]
                                           [--out campaign.json] [--corpus DIR]

Exit code 0 iff the campaign records zero violations.
"""

import argparse
import sys
import time

from pseudocalc.harness import FuzzConfig, run_campaign


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=20260808)
    ap.add_argument("--out", default="campaign.json")
    ap.add_argument("--corpus", default="corpus", help="violation dump directory")
    args = ap.parse_args()

    cfg = FuzzConfig(seed=args.seed, trials=args.trials)
    start = time.perf_counter()
    report = run_campaign(cfg, corpus_dir=args.corpus)
    elapsed = time.perf_counter() - start

    with open(args.out, "w") as fh:
        fh.write(report.to_json() + "\n")
    slowest = max(report.trials, key=lambda t: t.wall_time)
    print(f"trials={cfg.trials} holds={report.holds} violations={report.violations} "
          f"not_evaluable={report.not_evaluable}")
    print(f"elapsed {elapsed:.1f}s; slowest trial #{slowest.index} "
          f"({slowest.scenario.check_kind}) {slowest.wall_time:.2f}s")
    print(f"report written to {args.out}")
    if report.violations:
        print(f"violation scenarios dumped under {args.corpus}/")
    return 0 if report.violations == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
