#!/usr/bin/env python3
"""Bipartite graph census over a range of node counts, as JSON lines."""

import argparse
import sys
import time

from tlc import stabset


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-nodes", type=int, default=6)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    for n in range(1, args.max_nodes + 1):
        t0 = time.time()
        rep = stabset.census(n, jobs=args.jobs)
        print(rep.to_json())
        print(f"n={n} done in {time.time() - t0:.1f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
