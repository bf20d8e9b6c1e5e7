"""Scan the D_n(x) family: closed-form tilability against exact cover, and TS-perfection.

    python scripts/dn_family_scan.py --n 6
    python scripts/dn_family_scan.py --n 4 5 6 --no-search
"""

from __future__ import annotations

import argparse
import time
from collections import Counter

from tsperfect.hypercube import hamming_weight
from tsperfect.tilings import dn_is_tile, dn_tile, dn_ts_perfect, tilable


def scan(n: int, search: bool) -> None:
    start = time.perf_counter()
    by_weight: dict[int, Counter] = {}
    for x in range(1 << n):
        w = hamming_weight(x)
        if w < 2:
            continue
        closed = dn_is_tile(n, x)
        row = by_weight.setdefault(w, Counter())
        row["tile" if closed else "not tile"] += 1
        if search and tilable(n, dn_tile(n, x)) != closed:
            row["disagree"] += 1
        if dn_ts_perfect(n, x):
            row["ts-perfect"] += 1
    print(f"n = {n} ({time.perf_counter() - start:.2f}s)")
    for w in sorted(by_weight):
        counts = by_weight[w]
        print(f"  weight {w}: " + ", ".join(f"{k} {counts[k]}" for k in ("tile", "not tile", "ts-perfect", "disagree") if counts[k]))


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+", default=[6])
    p.add_argument("--no-search", action="store_true", help="skip the exact-cover check")
    args = p.parse_args()
    for n in args.n:
        scan(n, not args.no_search)


if __name__ == "__main__":
    main()
