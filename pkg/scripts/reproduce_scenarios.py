#!/usr/bin/env python3
"""Re-run every built-in reproduction scenario and print a one-line summary each.

Usage: python scripts/reproduce_scenarios.py [--json DIR]
With --json DIR, the full per-scenario reports are written as JSON files.
"""

import argparse
import json
import sys
from pathlib import Path

from pseudocalc.cli import REPRODUCE


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--json", metavar="DIR", help="also dump full reports here")
    args = ap.parse_args()

    failures = 0
    for name in sorted(REPRODUCE):
        result = REPRODUCE[name]()
        ok = result["verdict_matches"]
        failures += 0 if ok else 1
        marker = "ok " if ok else "MISMATCH"
        print(f"{marker}  {name:12s} {result['description']}")
        for v in result["values"]:
            paper = v.get("paper")
            agree = v.get("agree")
            tag = "" if agree is None else ("  (agree)" if agree else "  (DIFFERS)")
            print(f"      {v['name']:22s} paper={paper}  recomputed={v.get('recomputed')}{tag}")
        for d in result.get("discrepancies", []):
            print(f"      note: {d}")
        if args.json:
            out = Path(args.json)
            out.mkdir(parents=True, exist_ok=True)
            with open(out / f"{name}.json", "w") as fh:
                json.dump(result, fh, indent=2, sort_keys=True)
    print(f"\n{len(REPRODUCE) - failures}/{len(REPRODUCE)} scenario verdicts match")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
