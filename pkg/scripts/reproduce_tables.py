"""Rebuild the small-tile classification and the worked constructions.

Prints the size-2/4/8 classification as tables, the poset and combinatorial
realizations found by exhaustive search, and checks the concatenation and
extension constructions on concrete tilings.

    python scripts/reproduce_tables.py
    python scripts/reproduce_tables.py --search --json out.json
"""

from __future__ import annotations

import argparse
import json
import time

from tsperfect.classify import classify_small_tiles, realize_combinatorial, realize_poset, table_rows
from tsperfect.cli import record_json, render_table
from tsperfect.metrics import (
    ball,
    extend_weight,
    hamming_table,
    max_weight,
    metrize_by_rank,
    metrized_radius,
    s_sum_literal,
    table_from,
    validate_weight,
)
from tsperfect.hypercube import VectorSet
from tsperfect.tilings import Tiling, complete_tiling, concat_tiling, verify_perfect


def classification(sizes, search: bool, opt_in_rank7: bool) -> dict:
    report = {}
    for size in sizes:
        start = time.perf_counter()
        records = classify_small_tiles(size)
        print(f"\n== tiles of size {size} ({time.perf_counter() - start:.2f}s) ==")
        print(render_table(records))
        report[size] = [record_json(r) for r in records]
    if search:
        print("\n== exhaustive realizations of the size-8 tiles ==")
        for row in table_rows():
            if row.rank == 7 and not opt_in_rank7:
                print(f"{row.name:5s} poset search skipped (pass --opt-in-rank7)")
            else:
                found = realize_poset(row.tile, opt_in_rank7=opt_in_rank7)
                radii = sorted({r for _, r in found})
                print(f"{row.name:5s} posets: {len(found):3d}  radii {radii}")
            if row.rank <= 6:
                found = realize_combinatorial(row.tile)
                radii = sorted({r for _, r in found})
                print(f"{row.name:5s} coverings: {len(found):3d}  radii {radii}")
    return report


def constructions() -> None:
    print("\n== constructions ==")
    h = hamming_table(3)
    rep = Tiling(3, ball(h, 0, 1), VectorSet(3, frozenset({0, 0b111})))
    joined = concat_tiling(rep, rep)

    d = max_weight(h, h)
    print(f"max weight, radius 1: ball = D|D {ball(d, 0, 1) == joined.tile}, perfect {bool(verify_perfect(joined.code, d, 1))}")

    lit = s_sum_literal(h, 1, h, 1)
    print(f"literal sum: weight {lit.verdict.is_weight} ({lit.verdict.kind} at {lit.verdict.witness})")
    m = metrize_by_rank(lit.table)
    r = metrized_radius(lit.table, lit.level)
    v = validate_weight(m)
    print(f"metrized sum: weight {v.is_weight}, TS {v.is_ts}, radius {r}, perfect {bool(verify_perfect(joined.code, m, r))}")

    for row in table_rows():
        if row.rank > 6 or row.name == "D1^3":
            continue
        n = row.rank + 2
        w = extend_weight(table_from(row.object), n)
        code = complete_tiling(row.rank, row.tile).concat(VectorSet.full(2))
        same = ball(w, 0, row.radius) == row.tile.embed(n)
        print(f"extend {row.name} to n={n}: ball preserved {same}, perfect {bool(verify_perfect(code, w, row.radius))}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 8], choices=[2, 4, 8])
    p.add_argument("--search", action="store_true", help="run the exhaustive poset and covering searches")
    p.add_argument("--opt-in-rank7", action="store_true", help="include the rank-7 poset search (about a minute)")
    p.add_argument("--json", help="write the classification records here")
    args = p.parse_args()
    report = classification(args.sizes, args.search, args.opt_in_rank7)
    constructions()
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=1)


if __name__ == "__main__":
    main()
