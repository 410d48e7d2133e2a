#!/usr/bin/env python3
"""Grid-refinement study over the worked g-Hardy scenarios.

Usage: python scripts/convergence_study.py [--levels 4,6,8]
"""

import argparse
import sys

from pseudocalc.hardy import HardyScenario
from pseudocalc.harness import refine_study

SCENARIOS = [
    ("half / (x+y)/2 / p=2", HardyScenario(f_src="(x+y)/2", check_kind="g_hardy",
                                           p=2.0, gen_spec="half")),
    ("sqrt / x^2*y^2 / p=2", HardyScenario(f_src="x^2*y^2", check_kind="g_hardy",
                                           p=2.0, gen_spec="sqrt")),
    ("identity / x*y / p=3", HardyScenario(f_src="x*y", check_kind="g_hardy",
                                           p=3.0, gen_spec="identity")),
]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--levels", default="4,6,8")
    args = ap.parse_args()
    levels = [int(v) for v in args.levels.split(",")]

    for label, scenario in SCENARIOS:
        report = refine_study(scenario, levels)
        print(label)
        for lvl, lhs, rhs in zip(report.levels, report.lhs_values, report.rhs_values):
            print(f"  level {lvl}: lhs={lhs:.12f} rhs={rhs:.12f}")
        print(f"  errors vs finest: {['%.3e' % e for e in report.errors]}")
        print(f"  observed order: {report.observed_order}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
