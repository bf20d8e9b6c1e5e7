"""Classification of small tiles: which downward-closed sets tile, which are
TS-balls, and which poset or combinatorial metrics realize them as balls.

Candidates are downward-closed sets containing 0 (simplicial complexes with
the empty face), generated level by level and deduplicated up to coordinate
permutation.  Downward closure is necessary for a TS-ball, so nothing that
could be a TS-ball is skipped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations, permutations

import numpy as np

from .hypercube import (
    VectorSet,
    canonical_form,
    compress,
    is_polyhedromino,
    permute,
    rank,
    submasks,
)
from .metrics import (
    Covering,
    Poset,
    TSBallVerdict,
    ball,
    is_ts_ball,
    table_from,
)
from .tilings import tilable

SUPPORTED_SIZES = (2, 4, 8)
POSET_RANK_LIMIT = 6
OPT_IN_POSET_RANK = 7


@dataclass(frozen=True)
class Realization:
    kind: str  # "poset" or "combinatorial"
    object: Poset | Covering
    radius: int
    source: str = "search"

    def table(self):
        return table_from(self.object)

    def verify(self, tile: VectorSet) -> bool:
        return ball(self.table(), 0, self.radius) == tile


@dataclass
class ClassificationRecord:
    tile: VectorSet
    size: int
    rank: int
    is_tile: bool
    ts: TSBallVerdict
    realizations: list[Realization] = field(default_factory=list)
    name: str | None = None


# ---------------------------------------------------------------------------
# fixtures


@lru_cache(maxsize=None)
def _fixture_data() -> dict:
    return json.loads(resources.files("tsperfect").joinpath("data/tables.json").read_text())


@dataclass(frozen=True)
class TableRow:
    name: str
    tile: VectorSet
    radius: int
    kind: str
    object: Poset | Covering

    @property
    def rank(self) -> int:
        return self.tile.n


def table_rows() -> list[TableRow]:
    """The six tiles of the two tables with their witness metrics."""
    data = _fixture_data()
    rows = []
    for entry in data["poset_tiles"]:
        p = entry["poset"]
        obj = Poset.from_covers(p["n"], [tuple(c) for c in p["covers"]])
        rows.append(TableRow(entry["name"], VectorSet.from_strings(entry["elements"]), entry["radius"], "poset", obj))
    for entry in data["combinatorial_tiles"]:
        c = entry["covering"]
        obj = Covering.of(c["n"], c["blocks"])
        rows.append(
            TableRow(entry["name"], VectorSet.from_strings(entry["elements"]), entry["radius"], "combinatorial", obj)
        )
    return rows


def rejected_example() -> tuple[VectorSet, int]:
    """The non-ball tile used to illustrate elimination, and its missing submask."""
    data = _fixture_data()["rejected_example"]
    tile = VectorSet.from_strings(data["elements"])
    return tile, VectorSet.from_strings([data["missing"]]).sorted()[0]


def small_ball_poset(n: int, special: tuple[int, ...]) -> Poset:
    """Poset with relations t <= l for t in ``special`` and l outside it.

    One, three or two special coordinates give balls {0, e_i},
    {0, e_i, e_j, e_k} and {0, e_i, e_j, e_i + e_j} respectively.
    """
    others = [l for l in range(1, n + 1) if l not in special]
    return Poset.from_covers(n, [(t, l) for t in special for l in others])


def radii_for(table_weights: np.ndarray, tile: VectorSet) -> list[int]:
    """All r >= 1 with {w <= r} equal to ``tile`` (r capped at the max weight)."""
    inside = tile.mask()
    top = int(table_weights.max())
    r_min = max(int(table_weights[inside].max()), 1)
    outside = table_weights[~inside]
    r_max = int(outside.min()) - 1 if outside.size else top
    return list(range(r_min, min(r_max, top) + 1))


# ---------------------------------------------------------------------------
# candidate enumeration


def _canonical(s: VectorSet) -> VectorSet:
    return canonical_form(compress(s))


def _sort_key(s: VectorSet) -> tuple:
    return (s.n, tuple(s.sorted()))


def enumerate_downward_closed(size: int, max_rank: int = 7) -> list[VectorSet]:
    """Downward-closed sets with ``size`` elements, one per permutation class.

    Each set is returned in its own rank dimension and in canonical form.
    """
    if size not in SUPPORTED_SIZES:
        raise ValueError(f"size must be one of {SUPPORTED_SIZES}, got {size}")
    if not 1 <= max_rank <= 7:
        raise ValueError("max_rank must lie in [1, 7]")
    width = max_rank
    level = {(): frozenset([0])}  # key -> members in F_2^width
    for _ in range(size - 1):
        nxt: dict = {}
        for members in level.values():
            used = 0
            for v in members:
                used |= v
            k = used.bit_length()  # canonical sets use coordinates 1..k
            limit = 1 << min(k + 1, width)
            for v in range(1, limit):
                if v in members or (v >> k and v != 1 << k):
                    continue
                if all(v & ~(1 << i) in members for i in range(width) if (v >> i) & 1):
                    grown = VectorSet(width, members | {v})
                    canon = _canonical(grown)
                    key = _sort_key(canon)
                    if key not in nxt:
                        nxt[key] = frozenset(canon.members)
        level = nxt
    out = [VectorSet(max(key[0], 1), frozenset(key[1])) for key in level]
    return sorted(out, key=_sort_key)


# ---------------------------------------------------------------------------
# realizations


def _relabel_poset(p: Poset, perm: tuple[int, ...]) -> Poset:
    down = [0] * p.n
    for j in range(p.n):
        down[perm[j]] = permute(p.down[j], perm)
    return Poset(p.n, tuple(down))


def _relabel_covering(f: Covering, perm: tuple[int, ...]) -> Covering:
    return Covering.of(f.n, [[perm[i - 1] + 1 for i in b] for b in f.blocks])


def find_permutation(src: VectorSet, dst: VectorSet) -> tuple[int, ...] | None:
    """Some coordinate permutation sending ``src`` onto ``dst`` (brute force)."""
    if src.n != dst.n or len(src) != len(dst):
        return None
    target = dst.members
    for perm in permutations(range(src.n)):
        if all(permute(v, perm) in target for v in src.members):
            return perm
    return None


def relabel(obj: Poset | Covering, perm: tuple[int, ...]) -> Poset | Covering:
    return _relabel_poset(obj, perm) if isinstance(obj, Poset) else _relabel_covering(obj, perm)


def _next_level(n: int, parents: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Posets on [n + 1] from posets on [n] by inserting the new top label n.

    The new element gets a down-set I and an up-set F with every element of I
    below every element of F; each labeled poset arises exactly once.
    """
    full = (1 << n) - 1
    out = []
    new_bit = 1 << n
    for down in parents:
        ideals = [s for s in range(full + 1) if all(down[i] & ~s == 0 for i in range(n) if (s >> i) & 1)]
        filters = [full & ~s for s in ideals]
        for ideal in ideals:
            above_ideal = 0
            for b in range(n):
                if down[b] & ideal == ideal and not (ideal >> b) & 1:
                    above_ideal |= 1 << b
            for filt in filters:
                if filt & ~above_ideal:
                    continue
                nd = list(down)
                for b in range(n):
                    if (filt >> b) & 1:
                        nd[b] |= new_bit
                nd.append(ideal | new_bit)
                out.append(tuple(nd))
    return out


@lru_cache(maxsize=None)
def all_posets(n: int) -> np.ndarray:
    """Every labeled partial order on [n] as an array of down-set masks."""
    level: list[tuple[int, ...]] = [()]
    for k in range(n):
        level = _next_level(k, level)
    return np.array(level, dtype=np.uint64).reshape(len(level), n)


def _poset_weight_rows(downs: np.ndarray, n: int) -> np.ndarray:
    ideals = np.zeros((downs.shape[0], 1 << n), dtype=np.uint64)
    for i in range(n):
        half = 1 << i
        ideals[:, half : 2 * half] = ideals[:, :half] | downs[:, i : i + 1]
    return np.bitwise_count(ideals).astype(np.int64)


def realize_poset(tile: VectorSet, opt_in_rank7: bool = False, chunk: int = 65536) -> list[tuple[Poset, int]]:
    """Every poset on [s] and radius r whose ball of radius r is the tile.

    The tile must span a coordinate subspace; it is compressed to F_2^s first.
    """
    tile = compress(tile) if rank(tile) < tile.n else tile
    s = tile.n
    limit = OPT_IN_POSET_RANK if opt_in_rank7 else POSET_RANK_LIMIT
    if s > limit:
        raise ValueError(f"poset search at rank {s} needs opt-in (limit {limit})")
    downs = all_posets(s)
    inside = tile.mask()
    found = []
    for start in range(0, downs.shape[0], chunk):
        block = downs[start : start + chunk]
        w = _poset_weight_rows(block, s)
        lo = np.maximum(w[:, inside].max(axis=1), 1)
        top = w.max(axis=1)
        hi = w[:, ~inside].min(axis=1) - 1 if (~inside).any() else top
        hi = np.minimum(hi, top)
        for idx in np.flatnonzero(lo <= hi):
            poset = Poset(s, tuple(int(x) for x in block[idx]))
            found.extend((poset, r) for r in range(int(lo[idx]), int(hi[idx]) + 1))
    return found


def realize_combinatorial(
    tile: VectorSet, max_blocks: int | None = None, max_block_size: int | None = None
) -> list[tuple[Covering, int]]:
    """Every covering within the bounds, and radius, whose ball is the tile.

    A block has weight 1, so it lies in every ball of positive radius; only
    non-zero members of the tile are therefore tried as blocks.
    """
    tile = compress(tile) if rank(tile) < tile.n else tile
    s = tile.n
    max_block_size = s if max_block_size is None else max_block_size
    if not 1 <= max_block_size <= s:
        raise ValueError(f"max_block_size must lie in [1, {s}]")
    candidates = [v for v in tile.sorted() if v and bin(v).count("1") <= max_block_size]
    max_blocks = len(candidates) if max_blocks is None else max_blocks
    if max_blocks < 1 or max_blocks > 16:
        raise ValueError("max_blocks must lie in [1, 16]")
    full = (1 << s) - 1
    found = []
    for k in range(1, min(max_blocks, len(candidates)) + 1):
        for blocks in combinations(candidates, k):
            union = 0
            for b in blocks:
                union |= b
            if union != full:
                continue
            cover = Covering.of(s, [[i + 1 for i in range(s) if (b >> i) & 1] for b in blocks])
            w = table_from(cover).weights
            found.extend((cover, r) for r in radii_for(w, tile))
    return found


# ---------------------------------------------------------------------------
# the classification itself


def _fixture_realizations(tile: VectorSet) -> tuple[str | None, list[Realization]]:
    out = []
    name = None
    for row in table_rows():
        if row.tile.n != tile.n or len(row.tile) != len(tile):
            continue
        perm = find_permutation(row.tile, tile)
        if perm is None:
            continue
        name = row.name
        out.append(Realization(row.kind, relabel(row.object, perm), row.radius, source="table"))
    if len(tile) in (2, 4):
        special = _small_ball_special(tile)
        if special is not None:
            poset = small_ball_poset(tile.n, special)
            radii = radii_for(table_from(poset).weights, tile)
            if radii:
                out.append(Realization("poset", poset, radii[0], source="small-ball"))
                name = {1: "B1", 3: "B2", 2: "B3"}[len(special)]
    return name, out


def _small_ball_special(tile: VectorSet) -> tuple[int, ...] | None:
    units = tuple(i + 1 for i in range(tile.n) if (1 << i) in tile)
    if len(units) == len(tile) - 1 and len(units) in (1, 3):
        return units
    if len(tile) == 4 and len(units) == 2 and all(v in tile for v in submasks(sum(1 << (i - 1) for i in units))):
        return units
    return None


def classify_small_tiles(
    size: int,
    realize: str | None = None,
    opt_in_rank7: bool = False,
    max_rank: int = 7,
) -> list[ClassificationRecord]:
    records = []
    for tile in enumerate_downward_closed(size, max_rank):
        verdict = is_ts_ball(tile)
        name, reals = _fixture_realizations(tile)
        if realize == "poset" and (tile.n <= POSET_RANK_LIMIT or opt_in_rank7):
            reals += [Realization("poset", p, r) for p, r in realize_poset(tile, opt_in_rank7)]
        elif realize == "combinatorial":
            reals += [Realization("combinatorial", f, r) for f, r in realize_combinatorial(tile)]
        elif realize not in (None, "poset"):
            raise ValueError(f"unknown realization kind {realize!r}")
        records.append(
            ClassificationRecord(
                tile=tile,
                size=len(tile),
                rank=rank(tile),
                is_tile=tilable(tile.n, tile),
                ts=verdict,
                realizations=reals,
                name=name,
            )
        )
    return records


def ts_tile_classes(records: list[ClassificationRecord]) -> list[ClassificationRecord]:
    """Records that are both tiles and TS-balls."""
    return [r for r in records if r.is_tile and r.ts.is_ball]


def check_record(record: ClassificationRecord) -> None:
    """Assert the record invariants; raises AssertionError on failure."""
    assert canonical_form(record.tile) == record.tile
    if record.ts.is_ball:
        assert is_polyhedromino(record.tile)
    for real in record.realizations:
        assert real.verify(record.tile), f"realization {real} does not give the tile"


def canonical_table_tiles() -> dict[str, VectorSet]:
    return {row.name: canonical_form(row.tile) for row in table_rows()}
