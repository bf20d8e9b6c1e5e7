"""Tilings (D, C) of F_2^n: verification, completion, perfect codes,
the D_n(x) family, and the extension and concatenation constructions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactcover
from .hypercube import (
    DimensionError,
    VectorSet,
    compress,
    coordinates_used,
    downward_closure_witness,
    hamming_weight,
    rank,
    submasks,
    unit,
)
from .metrics import Covering, WeightTable, ball


@dataclass(frozen=True)
class Tiling:
    n: int
    tile: VectorSet
    code: VectorSet

    def __post_init__(self) -> None:
        if self.tile.n != self.n or self.code.n != self.n:
            raise DimensionError("tile and code must live in F_2^n")


@dataclass(frozen=True)
class TilingVerdict:
    """``reason`` is ``"uncovered"`` (``point`` set) or ``"overlap"``
    (``point`` and the two ``codewords`` whose translates share it)."""

    ok: bool
    reason: str | None = None
    point: int | None = None
    codewords: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_tiling(n: int, tile: VectorSet, code: VectorSet) -> TilingVerdict:
    if tile.n != n or code.n != n:
        raise DimensionError(f"tile ({tile.n}) and code ({code.n}) must have dimension {n}")
    owner = np.full(1 << n, -1, dtype=np.int64)
    overlap = None
    d = np.array(tile.sorted(), dtype=np.int64)
    for c in code.sorted():
        pts = d ^ c
        prev = owner[pts]
        hit = np.flatnonzero(prev >= 0)
        if hit.size and overlap is None:
            p = int(pts[hit[0]])
            overlap = (p, (int(prev[hit[0]]), c))
        owner[pts[prev < 0]] = c
    missing = np.flatnonzero(owner < 0)
    if missing.size:
        return TilingVerdict(False, "uncovered", int(missing[0]))
    if overlap is not None:
        return TilingVerdict(False, "overlap", overlap[0], overlap[1])
    return TilingVerdict(True)


# ---------------------------------------------------------------------------
# completion by exact cover


def _cover_problem(points: list[int], tile: list[int], covered: set[int], candidates: list[int]):
    free = set(points) - covered
    rows = {}
    for c in candidates:
        cells = [c ^ d for d in tile]
        if all(p in free for p in cells):
            rows[c] = cells
    return rows, sorted(free)


def _is_coordinate_aligned(tile: VectorSet) -> bool:
    used = coordinates_used(tile)
    return rank(tile) == bin(used).count("1")


def tilable(n: int, tile: VectorSet) -> bool:
    """Whether some code tiles F_2^n with ``tile``; no canonical code needed."""
    if tile.n != n:
        raise DimensionError("tile dimension mismatch")
    if not tile.members or (1 << n) % len(tile):
        return False
    if 0 not in tile:
        tile = tile.translate(tile.sorted()[0])
    if _is_coordinate_aligned(tile) and rank(tile) < n:
        # translates never leave a coset of the span, so tiling the span suffices
        small = compress(tile)
        return tilable(small.n, small)
    pts = list(range(1 << n))
    d = tile.sorted()
    rows, cols = _cover_problem(pts, d, set(d), pts[1:])
    return exactcover.first_solution(rows, cols) is not None


def _least_code(n: int, tile: list[int]) -> list[int] | None:
    """Lexicographically least sorted code, built greedily with a feasibility oracle."""
    pts = list(range(1 << n))
    chosen = [0]
    covered = set(tile)
    total = (1 << n) // len(tile)
    rows, cols = _cover_problem(pts, tile, covered, pts[1:])
    sol = exactcover.first_solution(rows, cols)
    if sol is None:
        return None
    while len(chosen) < total:
        upper = min(sol)  # a feasible next codeword is known
        for c in range(chosen[-1] + 1, upper + 1):
            cells = [c ^ d for d in tile]
            if any(p in covered for p in cells):
                continue
            if c == upper:
                rest = sorted(sol)
                rest.remove(upper)
            else:
                trial = covered | set(cells)
                rows, cols = _cover_problem(pts, tile, trial, pts[c + 1 :])
                rest = exactcover.first_solution(rows, cols)
                if rest is None:
                    continue
            chosen.append(c)
            covered.update(cells)
            sol = rest
            break
        else:  # pragma: no cover - upper itself is always feasible
            raise AssertionError("lost a feasible continuation")
    return chosen


def complete_tiling(n: int, tile: VectorSet) -> VectorSet | None:
    """Lexicographically least code C with (D, C) a tiling of F_2^n, or None.

    Codes are compared as sorted integer sequences; 0 is always a codeword.
    """
    if tile.n != n:
        raise DimensionError("tile dimension mismatch")
    if 0 not in tile:
        raise ValueError("tile must contain 0")
    if (1 << n) % len(tile):
        return None
    if _is_coordinate_aligned(tile) and rank(tile) < n:
        used = coordinates_used(tile)
        positions = [i for i in range(n) if (used >> i) & 1]
        small = compress(tile)
        inner = complete_tiling(small.n, small)
        if inner is None:
            return None
        lifted = []
        for c in inner.members:
            v = 0
            for j, i in enumerate(positions):
                if (c >> j) & 1:
                    v |= 1 << i
            lifted.append(v)
        free = ((1 << n) - 1) & ~used
        return VectorSet(n, frozenset(c | t for c in lifted for t in submasks(free)))
    code = _least_code(n, tile.sorted())
    return None if code is None else VectorSet(n, frozenset(code))


def verify_perfect(code: VectorSet, table: WeightTable, r: int) -> TilingVerdict:
    """Whether radius-r balls around the codewords partition F_2^n."""
    if r <= 0:
        raise ValueError("perfect codes need a positive radius")
    return verify_tiling(table.n, ball(table, 0, r), code)


# ---------------------------------------------------------------------------
# the D_n(x) family


def dn_tile(n: int, x: int) -> VectorSet:
    """{0, x} together with all unit vectors e_1 .. e_n."""
    if hamming_weight(x) < 2:
        raise ValueError("x needs Hamming weight at least 2")
    if x >> n:
        raise DimensionError(f"x does not fit in dimension {n}")
    return VectorSet(n, frozenset([0, x, *(unit(i) for i in range(1, n + 1))]))


def dn_is_tile(n: int, x: int) -> bool:
    """Closed-form tilability of D_n(x).

    The weight criterion applies when n + 2 divides 2^n (n + 2 a power of two);
    otherwise no tiling can exist.
    """
    w = hamming_weight(x)
    if w < 2:
        raise ValueError("x needs Hamming weight at least 2")
    if (1 << n) % (n + 2):
        return False
    return w not in (n - 1, n - 2)


@dataclass(frozen=True)
class DnVerdict:
    ts_perfect: bool
    covering: Covering | None = None
    reason: str | None = None
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.ts_perfect


def dn_ts_perfect(n: int, x: int) -> DnVerdict:
    """Yes with the singletons-plus-{j,k} covering exactly when x = e_j + e_k
    and D_n(x) tiles; otherwise No with a reason."""
    tile = dn_tile(n, x)
    w = hamming_weight(x)
    if w > 2:
        _, missing = downward_closure_witness(tile)
        return DnVerdict(False, reason="missing submask", witness=missing)
    if not dn_is_tile(n, x):
        return DnVerdict(False, reason="not a tile")
    j, k = sorted(i + 1 for i in range(n) if (x >> i) & 1)
    blocks = [[i] for i in range(1, n + 1)] + [[j, k]]
    return DnVerdict(True, covering=Covering.of(n, blocks))


# ---------------------------------------------------------------------------
# constructions


def extend_tiling(tiling: Tiling, n: int) -> Tiling:
    """(D|0, C|F_2^(n-s)) in F_2^n."""
    s = tiling.n
    if n < s:
        raise DimensionError(f"cannot extend from dimension {s} down to {n}")
    tile = tiling.tile.embed(n)
    code = tiling.code.concat(VectorSet.full(n - s)) if n > s else tiling.code
    return Tiling(n, tile, code)


def concat_tiling(left: Tiling, right: Tiling) -> Tiling:
    for side, t in (("left", left), ("right", right)):
        verdict = verify_tiling(t.n, t.tile, t.code)
        if not verdict:
            raise ValueError(f"{side} input is not a tiling: {verdict}")
    return Tiling(left.n + right.n, left.tile.concat(right.tile), left.code.concat(right.code))


def project(tiling: Tiling, n: int) -> tuple[Tiling, Tiling]:
    """Split a concatenated tiling at coordinate n back into its factors.

    Only meaningful when tile and code are product sets.
    """
    m = tiling.n - n
    lo = (1 << n) - 1

    def halves(s: VectorSet) -> tuple[VectorSet, VectorSet]:
        return (
            VectorSet(n, frozenset(v & lo for v in s.members)),
            VectorSet(m, frozenset(v >> n for v in s.members)),
        )

    d1, d2 = halves(tiling.tile)
    c1, c2 = halves(tiling.code)
    return Tiling(n, d1, c1), Tiling(m, d2, c2)
