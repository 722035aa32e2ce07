#!/usr/bin/env python3
"""Run the bundled corpus sweep and print a per-criterion summary table."""

import sys
import time
from collections import defaultdict

from toricbundles.corpus import run_corpus


def main() -> int:
    start = time.time()
    checks = run_corpus()
    elapsed = time.time() - start
    by_criterion = defaultdict(list)
    for check in checks:
        by_criterion[check.criterion].append(check)
    width = max(len(c) for c in by_criterion)
    for criterion, items in by_criterion.items():
        passed = sum(1 for c in items if c.passed)
        mark = "ok " if passed == len(items) else "FAIL"
        print(f"{criterion:<{width}}  {passed:>3}/{len(items):<3} {mark}")
        for c in items:
            if not c.passed:
                print(f"    failed: {c.subject} {c.detail}")
    failures = sum(1 for c in checks if not c.passed)
    print(f"\n{len(checks) - failures}/{len(checks)} checks passed "
          f"in {elapsed:.2f}s")
    return 0 if failures == 0 else 2


if __name__ == "__main__":
    sys.exit(main())
