"""Command-line workbench.

Exit codes: 0 affirmative, 1 negative verdict (witness printed), 2 bad usage
or malformed input.  Output is JSON unless ``--table`` asks ``classify`` for
the human-readable layout.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import classify as cls
from . import formats as fmt
from .hypercube import VectorSet, format_vector, hamming_weight, parse_vector
from .metrics import (
    WeightAxiomError,
    WeightTable,
    ball,
    comb_weight,
    decoding_equivalent,
    extend_weight,
    is_ts_ball,
    max_weight,
    metrize_by_rank,
    poset_weight,
    table_from,
    validate_weight,
)
from .tilings import (
    Tiling,
    complete_tiling,
    concat_tiling,
    dn_is_tile,
    dn_tile,
    dn_ts_perfect,
    extend_tiling,
    tilable,
    verify_perfect,
    verify_tiling,
)


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(fmt.dumps(obj))


def _vec(v: int, n: int) -> str:
    return format_vector(v, n)


def _metric_source(args):
    if args.poset:
        return fmt.poset_from_json(fmt.load(args.poset))
    if args.covering:
        return fmt.covering_from_json(fmt.load(args.covering))
    return fmt.table_from_json(fmt.load(args.table))


def _tiling_verdict_json(verdict, n: int) -> dict:
    out = {"valid": verdict.ok}
    if not verdict.ok:
        out["reason"] = verdict.reason
        out["point"] = _vec(verdict.point, n)
        if verdict.codewords:
            out["codewords"] = [_vec(c, n) for c in verdict.codewords]
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_weight(args) -> int:
    src = _metric_source(args)
    v = parse_vector(args.vector, src.n)
    if isinstance(src, WeightTable):
        _emit(src[v])
    elif hasattr(src, "down"):
        _emit(poset_weight(src, v))
    else:
        _emit(comb_weight(src, v))
    return 0


def cmd_ball(args) -> int:
    src = _metric_source(args)
    table = table_from(src)
    center = parse_vector(args.center, table.n)
    _emit(fmt.set_to_json(ball(table, center, args.radius)))
    return 0


def cmd_validate_weight(args) -> int:
    table = fmt.table_from_json(fmt.load(args.table))
    verdict = validate_weight(table)
    out = {"weight": verdict.is_weight, "ts": verdict.is_ts}
    if not verdict.is_weight:
        out["kind"] = verdict.kind
        out["witness"] = [_vec(v, table.n) for v in verdict.witness]
    if not verdict.is_ts:
        out["ts_witness"] = [_vec(v, table.n) for v in verdict.ts_witness]
    _emit(out)
    return 0 if verdict.is_weight else 1


def cmd_is_ts_ball(args) -> int:
    tile = fmt.set_from_json(fmt.load(args.set), prefer="tile")
    verdict = is_ts_ball(tile)
    if verdict.is_ball:
        _emit({"status": "yes", "radius": verdict.radius, "table": fmt.table_to_json(verdict.table)})
        return 0
    x, y = verdict.witness
    _emit({"status": "no", "witness": {"member": _vec(x, tile.n), "missing": _vec(y, tile.n)}})
    return 1


def cmd_verify_tiling(args) -> int:
    t = fmt.tiling_from_json(fmt.load(args.tiling))
    verdict = verify_tiling(t.n, t.tile, t.code)
    _emit(_tiling_verdict_json(verdict, t.n))
    return 0 if verdict.ok else 1


def cmd_complete_tiling(args) -> int:
    tile = fmt.set_from_json(fmt.load(args.tile), prefer="tile")
    if tile.n > args.n:
        raise UsageError(f"tile dimension {tile.n} exceeds --n {args.n}")
    tile = tile.embed(args.n)
    if (1 << args.n) % len(tile):
        _emit({"tiling": None, "reason": f"|D| = {len(tile)} does not divide 2^{args.n}"})
        return 1
    code = complete_tiling(args.n, tile)
    if code is None:
        _emit({"tiling": None, "reason": "no tiling exists"})
        return 1
    _emit(fmt.tiling_to_json(Tiling(args.n, tile, code)))
    return 0


def cmd_perfect_check(args) -> int:
    code = fmt.set_from_json(fmt.load(args.code), prefer="code")
    table = table_from(fmt.table_from_json(fmt.load(args.table)))
    if args.radius <= 0:
        raise UsageError("perfect codes need --radius > 0")
    verdict = verify_perfect(code, table, args.radius)
    out = {"perfect": verdict.ok}
    out.update({k: v for k, v in _tiling_verdict_json(verdict, table.n).items() if k != "valid"})
    _emit(out)
    return 0 if verdict.ok else 1


def cmd_dn_family(args) -> int:
    n = args.n
    if args.x is not None:
        x = parse_vector(args.x, n)
    else:
        if not 2 <= args.weight <= n:
            raise UsageError(f"--weight must lie in [2, {n}]")
        x = (1 << args.weight) - 1
    if hamming_weight(x) < 2:
        raise UsageError("x needs Hamming weight at least 2")
    tile = dn_tile(n, x)
    out = {"n": n, "x": _vec(x, n), "tile": tile.to_strings()}
    code = 0
    if args.check_tile:
        ok = dn_is_tile(n, x)
        out["is_tile"] = ok
        if n <= 10:
            out["exact_cover"] = tilable(n, tile)
        if not ok:
            out["message"] = "not a tile"
            code = 1
    if args.ts_witness:
        verdict = dn_ts_perfect(n, x)
        out["ts_perfect"] = verdict.ts_perfect
        if verdict.ts_perfect:
            out["covering"] = fmt.covering_to_json(verdict.covering)
            out["radius"] = 1
        else:
            out["reason"] = verdict.reason
            if verdict.witness is not None:
                out["witness"] = _vec(verdict.witness, n)
            code = 1
    _emit(out)
    return code


def cmd_extend(args) -> int:
    if args.weight:
        table = fmt.table_from_json(fmt.load(args.weight))
        if args.s is not None and args.s != table.n:
            raise UsageError(f"--s {args.s} does not match table dimension {table.n}")
        if args.n < table.n:
            raise UsageError("--n must be at least the table dimension")
        _emit(fmt.table_to_json(extend_weight(table, args.n)))
        return 0
    t = fmt.tiling_from_json(fmt.load(args.tiling))
    if args.n < t.n:
        raise UsageError("--n must be at least the tiling dimension")
    _emit(fmt.tiling_to_json(extend_tiling(t, args.n)))
    return 0


def cmd_concat(args) -> int:
    left, right = fmt.load(args.left), fmt.load(args.right)
    if isinstance(left, dict) and "weights" in left:
        a, b = (args.scales or (1, 1))
        out = max_weight(fmt.table_from_json(left), fmt.table_from_json(right), a, b)
        _emit(fmt.table_to_json(out))
        return 0
    if args.scales:
        raise UsageError("--scales applies to weight tables only")
    t1, t2 = fmt.tiling_from_json(left), fmt.tiling_from_json(right)
    for side, t in (("left", t1), ("right", t2)):
        verdict = verify_tiling(t.n, t.tile, t.code)
        if not verdict:
            _emit({"tiling": None, "side": side, **_tiling_verdict_json(verdict, t.n)})
            return 1
    _emit(fmt.tiling_to_json(concat_tiling(t1, t2)))
    return 0


def cmd_equiv(args) -> int:
    a = fmt.table_from_json(fmt.load(args.a))
    b = fmt.table_from_json(fmt.load(args.b))
    if a.n != b.n:
        raise UsageError(f"dimension mismatch: {a.n} vs {b.n}")
    result = decoding_equivalent(a, b)
    out = {"equivalent": result.equivalent}
    if result.witness:
        out["witness"] = [_vec(v, a.n) for v in result.witness]
    _emit(out)
    return 0 if result.equivalent else 1


def cmd_metrize(args) -> int:
    table = fmt.table_from_json(fmt.load(args.table))
    _emit(fmt.table_to_json(metrize_by_rank(table)))
    return 0


def _realization_json(real: cls.Realization) -> dict:
    if real.kind == "poset":
        obj = fmt.poset_to_json(real.object)
    else:
        obj = fmt.covering_to_json(real.object)
    return {"kind": real.kind, "object": obj, "radius": real.radius, "source": real.source}


def record_json(rec: cls.ClassificationRecord) -> dict:
    n = rec.tile.n
    if rec.ts.is_ball:
        ts = {"status": "yes", "witness": {"radius": rec.ts.radius, "weights": [int(w) for w in rec.ts.table.weights]}}
    else:
        x, y = rec.ts.witness
        ts = {"status": "no", "witness": {"member": _vec(x, n), "missing": _vec(y, n)}}
    return {
        "name": rec.name,
        "tile": rec.tile.to_strings(),
        "rank": rec.rank,
        "size": rec.size,
        "is_tile": rec.is_tile,
        "ts": ts,
        "realizations": [_realization_json(r) for r in rec.realizations],
    }


def _describe(real: cls.Realization) -> str:
    if real.kind == "poset":
        rel = real.object.covers()
        body = ", ".join(f"{a}<={b}" for a, b in rel) or "only trivial relations"
        return f"P: {body}"
    blocks = ",".join("{" + ",".join(map(str, b)) + "}" for b in real.object.sorted_blocks())
    return f"F: {{{blocks}}}"


def _elements(tile: VectorSet) -> str:
    names = []
    for v in tile.sorted():
        names.append("0" if v == 0 else "+".join(f"e{i + 1}" for i in range(tile.n) if (v >> i) & 1))
    return ", ".join(names)


def render_table(records: list[cls.ClassificationRecord]) -> str:
    header = ["Tile", "Rank", "Elements", "Tile?", "TS-ball", "Radius", "Metric"]
    rows = []
    for rec in records:
        first = rec.realizations[0] if rec.realizations else None
        rows.append(
            [
                rec.name or "-",
                str(rec.rank),
                _elements(rec.tile),
                "yes" if rec.is_tile else "no",
                "yes" if rec.ts.is_ball else "no",
                str(first.radius) if first else "-",
                _describe(first) if first else "-",
            ]
        )
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    line = "+".join("-" * (w + 2) for w in widths)
    fmt_row = lambda r: "|".join(f" {c:<{w}} " for c, w in zip(r, widths))  # noqa: E731
    return "\n".join([fmt_row(header), line, *map(fmt_row, rows)])


def cmd_classify(args) -> int:
    records = cls.classify_small_tiles(args.size, realize=args.realize, opt_in_rank7=args.opt_in_rank7)
    if args.table:
        print(render_table(records))
    else:
        _emit([record_json(r) for r in records])
    return 0


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 already; keep one line
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tsperfect", description="TS-metrics, tilings and perfect codes on F_2^n")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def metric_group(sp, required=True):
        g = sp.add_mutually_exclusive_group(required=required)
        g.add_argument("--poset")
        g.add_argument("--covering")
        g.add_argument("--table")

    sp = sub.add_parser("weight")
    metric_group(sp)
    sp.add_argument("--vector", required=True)
    sp.set_defaults(func=cmd_weight)

    sp = sub.add_parser("ball")
    metric_group(sp)
    sp.add_argument("--center", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.set_defaults(func=cmd_ball)

    sp = sub.add_parser("validate-weight")
    sp.add_argument("--table", required=True)
    sp.set_defaults(func=cmd_validate_weight)

    sp = sub.add_parser("is-ts-ball")
    sp.add_argument("--set", required=True)
    sp.set_defaults(func=cmd_is_ts_ball)

    sp = sub.add_parser("verify-tiling")
    sp.add_argument("--tiling", required=True)
    sp.set_defaults(func=cmd_verify_tiling)

    sp = sub.add_parser("complete-tiling")
    sp.add_argument("--tile", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_complete_tiling)

    sp = sub.add_parser("perfect-check")
    sp.add_argument("--code", required=True)
    sp.add_argument("--table", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.set_defaults(func=cmd_perfect_check)

    sp = sub.add_parser("dn-family")
    sp.add_argument("--n", type=int, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--x")
    g.add_argument("--weight", type=int)
    sp.add_argument("--check-tile", action="store_true")
    sp.add_argument("--ts-witness", action="store_true")
    sp.set_defaults(func=cmd_dn_family)

    sp = sub.add_parser("extend")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--weight")
    g.add_argument("--tiling")
    sp.add_argument("--s", type=int)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("concat")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--scales", type=int, nargs=2, metavar=("A", "B"))
    sp.set_defaults(func=cmd_concat)

    sp = sub.add_parser("equiv")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("metrize")
    sp.add_argument("--table", required=True)
    sp.set_defaults(func=cmd_metrize)

    sp = sub.add_parser("classify")
    sp.add_argument("--size", type=int, choices=cls.SUPPORTED_SIZES, required=True)
    sp.add_argument("--realize", choices=("poset", "combinatorial"))
    sp.add_argument("--opt-in-rank7", action="store_true")
    sp.add_argument("--table", action="store_true", help="human-readable table instead of JSON")
    sp.set_defaults(func=cmd_classify)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "command", None) == "extend" and args.weight and args.s is None:
            raise UsageError("extend --weight needs --s")
        return args.func(args)
    except (UsageError, fmt.FormatError, WeightAxiomError, ValueError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {msg}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
