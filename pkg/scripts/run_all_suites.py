#!/usr/bin/env python3
"""Run every suite in both modes and write one JSON report per suite and mode."""

import argparse
import json
from pathlib import Path

from racahweyl.verify import SUITES, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("reports"))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--symbolic-only", action="store_true")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    modes = (False,) if args.symbolic_only else (False, True)
    verdicts = {}
    for suite in SUITES:
        for oracle in modes:
            rep = run_suite(suite, oracle=oracle, jobs=args.jobs)
            path = args.out / f"{suite}.{rep.mode}.json"
            path.write_text(json.dumps(rep.to_dict(), indent=2))
            passed = sum(r.passed for r in rep.results)
            ms = sum(r.elapsed_ms for r in rep.results)
            print(f"{suite:<16} {rep.mode:<9} {passed:>4}/{len(rep.results):<4} {ms / 1000:7.2f} s  -> {path}")
            verdicts.setdefault(suite, []).append([r.status for r in rep.results])
    disagree = [s for s, v in verdicts.items() if len(v) == 2 and v[0] != v[1]]
    if disagree:
        print(f"symbolic and oracle verdicts differ in: {', '.join(disagree)}")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
