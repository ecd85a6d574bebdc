#!/usr/bin/env python3
"""Enumerate maximal classes for a range of dimensions and print the report."""

import argparse
import sys
import time

from tlc import enumeration
from tlc.store import Store


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-dim", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--store", default=None, help="persist canonical forms here")
    ap.add_argument("--seed-limit", type=int, default=None, help="sampled budget for dimension 5")
    args = ap.parse_args()

    store = Store(args.store) if args.store else None
    results = []
    for d in range(1, args.max_dim + 1):
        t0 = time.time()
        res = enumeration.enumerate_maximal(d, jobs=args.jobs, store=store, seed_limit=args.seed_limit if d == 5 else None)
        print(
            f"d={d}: {len(res.classes)} classes from {res.stats.seeds_spanning} spanning seeds "
            f"({res.stats.degenerate_seeds} degenerate) in {time.time() - t0:.1f}s",
            file=sys.stderr,
        )
        results.append(res)
    print(enumeration.report(results), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
