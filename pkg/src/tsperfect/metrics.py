"""TS-weights on F_2^n and the metrics they induce.

Every metric here is translation invariant, so it is carried around as its
weight table ``w`` with ``d(x, y) = w[x ^ y]``.  Sources of tables are posets
(ideal cardinality), coverings (minimum block cover) and explicit arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .hypercube import (
    DimensionError,
    VectorSet,
    check_dimension,
    downward_closure_witness,
)


class WeightAxiomError(ValueError):
    """A table fails a weight axiom; ``kind`` and ``witness`` say where."""

    def __init__(self, kind: str, witness: tuple[int, ...], message: str = ""):
        self.kind = kind
        self.witness = witness
        super().__init__(message or f"{kind} violated at {witness}")


# ---------------------------------------------------------------------------
# posets


@dataclass(frozen=True)
class Poset:
    """A partial order on [n].

    ``down[a]`` is the bitmask of all b with b <= a (0-based bits), so the
    relation is stored already closed.
    """

    n: int
    down: tuple[int, ...]

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[Sequence[int]]) -> "Poset":
        """Build from 1-based pairs (a, b) meaning a <= b; closes transitively."""
        check_dimension(n)
        rel = np.eye(n, dtype=bool)
        for a, b in covers:
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValueError(f"relation ({a}, {b}) outside [1, {n}]")
            rel[a - 1, b - 1] = True
        # repeated squaring of the reflexive relation reaches the closure
        while True:
            nxt = (rel.astype(np.int64) @ rel.astype(np.int64)) > 0
            if (nxt == rel).all():
                break
            rel = nxt
        both = rel & rel.T
        np.fill_diagonal(both, False)
        if both.any():
            a, b = map(int, np.argwhere(both)[0])
            raise ValueError(f"relations contain a cycle through {a + 1} and {b + 1}")
        down = tuple(
            int(sum(1 << i for i in range(n) if rel[i, j])) for j in range(n)
        )
        return cls(n, down)

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def chain(cls, n: int) -> "Poset":
        """1 <= 2 <= ... <= n."""
        return cls(n, tuple((1 << (i + 1)) - 1 for i in range(n)))

    def leq(self, a: int, b: int) -> bool:
        """1-based order test a <= b."""
        return bool((self.down[b - 1] >> (a - 1)) & 1)

    def ideal(self, v: int) -> int:
        """Bitmask of the order ideal generated by supp(v)."""
        acc = 0
        i = 0
        while v:
            if v & 1:
                acc |= self.down[i]
            v >>= 1
            i += 1
        return acc

    def covers(self) -> list[tuple[int, int]]:
        """The cover (Hasse) pairs, 1-based, sorted."""
        out = []
        for b in range(self.n):
            below = self.down[b] & ~(1 << b)
            for a in range(self.n):
                if not (below >> a) & 1:
                    continue
                # a is covered by b unless some c strictly between them
                between = below & ~(1 << a)
                if not any((between >> c) & 1 and (self.down[c] >> a) & 1 for c in range(self.n)):
                    out.append((a + 1, b + 1))
        return sorted(out)

    def relations(self) -> list[tuple[int, int]]:
        """All non-trivial pairs a < b, 1-based."""
        return sorted(
            (a + 1, b + 1)
            for b in range(self.n)
            for a in range(self.n)
            if a != b and (self.down[b] >> a) & 1
        )


def poset_weight(poset: Poset, v: int) -> int:
    if v >> poset.n:
        raise DimensionError(f"vector does not fit in dimension {poset.n}")
    return bin(poset.ideal(v)).count("1")


# ---------------------------------------------------------------------------
# coverings


@dataclass(frozen=True)
class Covering:
    """A family of non-empty subsets of [n] (1-based) whose union is [n]."""

    n: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        check_dimension(self.n)
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if len(set(blocks)) != len(blocks):
            raise ValueError("duplicate blocks in covering")
        union: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block in covering")
            if min(b) < 1 or max(b) > self.n:
                raise ValueError(f"block {sorted(b)} outside [1, {self.n}]")
            union |= b
        if union != set(range(1, self.n + 1)):
            missing = sorted(set(range(1, self.n + 1)) - union)
            raise ValueError(f"blocks do not cover [n]; missing {missing}")

    @classmethod
    def of(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Covering":
        return cls(n, tuple(frozenset(b) for b in blocks))

    @classmethod
    def singletons(cls, n: int) -> "Covering":
        return cls.of(n, [[i] for i in range(1, n + 1)])

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << (i - 1) for i in b) for b in self.blocks)

    def sorted_blocks(self) -> list[list[int]]:
        return sorted((sorted(b) for b in self.blocks), key=lambda b: (len(b), b))


def _min_cover(target: int, masks: Sequence[int]) -> int:
    """Exact minimum number of masks whose union contains ``target``.

    Branches on the lowest uncovered coordinate (some chosen block must
    contain it), drops blocks dominated on the uncovered remainder, and
    memoizes on that remainder.
    """
    memo: dict[int, int] = {0: 0}

    def solve(rest: int) -> int:
        if rest in memo:
            return memo[rest]
        low = rest & -rest
        hits = {m & rest for m in masks if m & low}
        branches = [h for h in hits if not any(h != g and h & g == h for g in hits)]
        best = 1 + min(solve(rest & ~h) for h in branches)
        memo[rest] = best
        return best

    return solve(target)


def comb_weight(covering: Covering, v: int) -> int:
    if v >> covering.n:
        raise DimensionError(f"vector does not fit in dimension {covering.n}")
    return _min_cover(v, covering.masks)


# ---------------------------------------------------------------------------
# weight tables


@dataclass(frozen=True, eq=False)
class WeightTable:
    """A function on F_2^n stored as ``weights[v]`` for v in 0 .. 2^n - 1.

    Construction does not validate; :func:`table_from` and
    :func:`validate_weight` do.
    """

    n: int
    weights: np.ndarray

    def __post_init__(self) -> None:
        check_dimension(self.n)
        arr = np.array(self.weights, dtype=np.int64).reshape(-1)
        if arr.shape[0] != 1 << self.n:
            raise DimensionError(f"weight table needs {1 << self.n} entries, got {arr.shape[0]}")
        arr.flags.writeable = False
        object.__setattr__(self, "weights", arr)

    def __getitem__(self, v: int) -> int:
        return int(self.weights[v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightTable):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.weights, other.weights))

    def __hash__(self) -> int:
        return hash((self.n, self.weights.tobytes()))

    @property
    def max_weight(self) -> int:
        return int(self.weights.max())

    def distance(self, x: int, y: int) -> int:
        return int(self.weights[x ^ y])

    def scaled(self, factor: int) -> "WeightTable":
        return WeightTable(self.n, self.weights * factor)


def hamming_table(n: int) -> WeightTable:
    check_dimension(n)
    return WeightTable(n, np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64))


def _poset_table(poset: Poset) -> np.ndarray:
    ideals = np.zeros(1 << poset.n, dtype=np.uint64)
    for i in range(poset.n):
        half = 1 << i
        ideals[half : 2 * half] = ideals[:half] | np.uint64(poset.down[i])
    return np.bitwise_count(ideals).astype(np.int64)


def _covering_table(covering: Covering) -> np.ndarray:
    n = covering.n
    masks = covering.masks
    w = np.zeros(1 << n, dtype=np.int64)
    # every v > 0 has some block through its lowest coordinate; v & ~b < v
    by_low = [[m for m in masks if (m >> i) & 1] for i in range(n)]
    wl = [0] * (1 << n)
    for v in range(1, 1 << n):
        low = (v & -v).bit_length() - 1
        wl[v] = 1 + min(wl[v & ~m] for m in by_low[low])
    w[:] = wl
    return w


@dataclass(frozen=True)
class WeightVerdict:
    """Outcome of :func:`validate_weight`.

    ``kind`` names the first failed weight axiom (``"zero"``, ``"positivity"``
    or ``"triangle"``) and ``witness`` the vectors involved.  TS status is
    reported separately: ``ts_witness`` is a pair (u, v) with supp(u) inside
    supp(v) and w[u] > w[v].
    """

    is_weight: bool
    kind: str | None = None
    witness: tuple[int, ...] | None = None
    is_ts: bool = False
    ts_witness: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.is_weight and self.is_ts


def _weight_axiom_violation(w: np.ndarray) -> tuple[str, tuple[int, ...]] | None:
    if w[0] != 0:
        return "zero", (0,)
    bad = np.flatnonzero(w[1:] <= 0)
    if bad.size:
        return "positivity", (int(bad[0]) + 1,)
    idx = np.arange(w.shape[0])
    for u in range(w.shape[0]):
        fails = np.flatnonzero(w[u ^ idx] > w[u] + w)
        if fails.size:
            return "triangle", (u, int(fails[0]))
    return None


def _support_violation(w: np.ndarray, n: int) -> tuple[int, int] | None:
    # dropping one coordinate at a time suffices: the subset order is the
    # transitive closure of single-coordinate removals
    idx = np.arange(w.shape[0])
    best = None
    for i in range(n):
        has = (idx >> i) & 1 == 1
        v = idx[has]
        u = v ^ (1 << i)
        bad = np.flatnonzero(w[u] > w[v])
        if bad.size:
            cand = (int(v[bad[0]]), int(u[bad[0]]))
            if best is None or cand < best:
                best = cand
    if best is None:
        return None
    return best[1], best[0]


def validate_weight(table: WeightTable) -> WeightVerdict:
    w = table.weights
    violation = _weight_axiom_violation(w)
    ts = _support_violation(w, table.n)
    if violation is None:
        return WeightVerdict(True, is_ts=ts is None, ts_witness=ts)
    kind, witness = violation
    return WeightVerdict(False, kind, witness, is_ts=ts is None, ts_witness=ts)


def table_from(source: Poset | Covering | WeightTable | Sequence[int], n: int | None = None) -> WeightTable:
    """Materialize a weight over all of F_2^n and check the weight axioms.

    Raises :class:`WeightAxiomError` with a witness if the table is not a weight.
    """
    if isinstance(source, Poset):
        table = WeightTable(source.n, _poset_table(source))
    elif isinstance(source, Covering):
        table = WeightTable(source.n, _covering_table(source))
    elif isinstance(source, WeightTable):
        table = source
    else:
        values = np.asarray(source, dtype=np.int64)
        if n is None:
            n = int(values.shape[0]).bit_length() - 1
        table = WeightTable(n, values)
    verdict = validate_weight(table)
    if not verdict.is_weight:
        raise WeightAxiomError(verdict.kind, verdict.witness)
    return table


# ---------------------------------------------------------------------------
# balls and ball witnesses


def ball(table: WeightTable, center: int, r: int) -> VectorSet:
    if r < 0:
        raise ValueError("radius must be non-negative")
    inside = np.flatnonzero(table.weights <= r)
    return VectorSet(table.n, frozenset(int(v) ^ center for v in inside))


def sublevel(table: WeightTable, r: int) -> VectorSet:
    return ball(table, 0, r)


def two_level_weight(tile: VectorSet) -> WeightTable:
    """Weight 1 on D minus 0, weight 2 off D; its unit ball is D.

    Any values in {1, 2} satisfy the triangle inequality, and downward closure
    of D is exactly what makes the table respect support.
    """
    if 0 not in tile:
        raise WeightAxiomError("contains-zero", (0,), "tile must contain 0")
    witness = downward_closure_witness(tile)
    if witness is not None:
        raise WeightAxiomError("downward-closed", witness, f"{witness[1]} is a missing submask of {witness[0]}")
    w = np.full(1 << tile.n, 2, dtype=np.int64)
    w[tile.sorted()] = 1
    w[0] = 0
    return WeightTable(tile.n, w)


@dataclass(frozen=True)
class TSBallVerdict:
    """Yes carries a witness table and radius; No carries (x, y) with
    x in D, y not in D and supp(y) inside supp(x)."""

    is_ball: bool
    table: WeightTable | None = None
    radius: int | None = None
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.is_ball


def is_ts_ball(tile: VectorSet) -> TSBallVerdict:
    """Decide whether D is a ball around 0 of some TS-metric."""
    if not tile.members:
        raise ValueError("empty set")
    if 0 not in tile:
        raise ValueError("translate the set so that it contains 0 first")
    witness = downward_closure_witness(tile)
    if witness is not None:
        return TSBallVerdict(False, witness=witness)
    return TSBallVerdict(True, table=two_level_weight(tile), radius=1)


# ---------------------------------------------------------------------------
# constructions


def extend_weight(table: WeightTable, n: int) -> WeightTable:
    """Extend a weight on F_2^s to F_2^n: keep it on F_2^s, put M+1 elsewhere."""
    s = table.n
    if n < s:
        raise DimensionError(f"cannot extend from dimension {s} down to {n}")
    check_dimension(n)
    w = np.full(1 << n, table.max_weight + 1, dtype=np.int64)
    w[: 1 << s] = table.weights
    return WeightTable(n, w)


def max_weight(left: WeightTable, right: WeightTable, scale_left: int = 1, scale_right: int = 1) -> WeightTable:
    """w(x1|x2) = max(scale_left * w1[x1], scale_right * w2[x2]).

    With radii r (left) and s (right), scales (s, r) make the level-rs set the
    product of the level-r and level-s sets.
    """
    if scale_left <= 0 or scale_right <= 0:
        raise ValueError("scales must be positive")
    grid = np.maximum(scale_left * left.weights[None, :], scale_right * right.weights[:, None])
    return WeightTable(left.n + right.n, grid.reshape(-1))


@dataclass(frozen=True)
class SSumResult:
    table: WeightTable
    verdict: WeightVerdict
    level: int


def s_sum_literal(left: WeightTable, r: int, right: WeightTable, s: int) -> SSumResult:
    """The conditional sum: w1[x1] + w2[x2] on D1|D2, r + s + 1 elsewhere.

    The result is returned together with its validation verdict because it
    need not satisfy the triangle inequality.
    """
    if r > s:
        raise ValueError(f"s-sum needs r <= s, got r={r}, s={s}")
    if r <= 0:
        raise ValueError("radii must be positive")
    in1 = left.weights <= r
    in2 = right.weights <= s
    summed = left.weights[None, :] + right.weights[:, None]
    inside = in1[None, :] & in2[:, None]
    grid = np.where(inside, summed, r + s + 1)
    table = WeightTable(left.n + right.n, grid.reshape(-1))
    return SSumResult(table, validate_weight(table), r + s)


def metrize_by_rank(table: WeightTable) -> WeightTable:
    """Replace the i-th smallest of the k distinct non-zero values by k + i - 1.

    All non-zero outputs lie in [k, 2k - 1], so the triangle inequality holds
    automatically while every strict comparison is preserved.
    """
    w = table.weights
    if w[0] != 0 or (w[1:] <= 0).any():
        raise WeightAxiomError("positivity", (0,), "values need w[0] = 0 and w[v] > 0 elsewhere")
    distinct = np.unique(w[1:])
    k = distinct.shape[0]
    out = np.zeros_like(w)
    out[1:] = k + np.searchsorted(distinct, w[1:])
    return WeightTable(table.n, out)


def metrized_radius(table: WeightTable, r: int) -> int:
    """Radius in ``metrize_by_rank(table)`` whose ball is the level-r set of ``table``."""
    metrized = metrize_by_rank(table)
    inside = table.weights <= r
    return int(metrized.weights[inside].max())


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    witness: tuple[int, int] | None = None


def _dense_rank(w: np.ndarray) -> np.ndarray:
    return np.searchsorted(np.unique(w), w)


def decoding_equivalent(a: WeightTable, b: WeightTable) -> Equivalence:
    """Order agreement of two weights: a[u] < a[v] iff b[u] < b[v] for all u, v.

    On failure the witness (u, v) prefers a reversed pair (a[u] < a[v] while
    b[u] > b[v]) and otherwise a pair that one weight ties and the other does
    not.
    """
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    if np.array_equal(_dense_rank(a.weights), _dense_rank(b.weights)):
        return Equivalence(True)
    wa, wb = a.weights, b.weights
    for u in range(wa.shape[0]):
        rev = np.flatnonzero((wa[u] < wa) & (wb[u] > wb))
        if rev.size:
            return Equivalence(False, (u, int(rev[0])))
    for u in range(wa.shape[0]):
        tie = np.flatnonzero((wa[u] < wa) != (wb[u] < wb))
        if tie.size:
            return Equivalence(False, (u, int(tie[0])))
    raise AssertionError("rank vectors differ but no witness pair found")


# ---------------------------------------------------------------------------
# distance matrices


@dataclass(frozen=True, eq=False)
class MetricMatrix:
    """Full 2^n x 2^n distance matrix, m[x, y] = d(x, y)."""

    n: int
    m: np.ndarray = field(repr=False)

    def first_row(self) -> WeightTable:
        return WeightTable(self.n, self.m[:, 0])

    def translation_form(self) -> bool:
        idx = np.arange(1 << self.n)
        return bool(np.array_equal(self.m, self.m[idx[:, None] ^ idx[None, :], 0]))


def matrix_from_weight(table: WeightTable) -> MetricMatrix:
    idx = np.arange(1 << table.n)
    return MetricMatrix(table.n, np.array(table.weights[idx[:, None] ^ idx[None, :]]))


@dataclass(frozen=True)
class MatrixVerdict:
    ok: bool
    condition: str | None = None
    witness: tuple[int, ...] | None = None


def validate_c1c2c3(matrix: MetricMatrix, tile: VectorSet, r: int, reference: WeightTable) -> MatrixVerdict:
    """Check the three matrix conditions in order and report the first failure.

    C1: m[x, 0] equals the reference distance d(x, 0) for x in D.
    C2: m[x, 0] > r for x outside D.
    C3: m[x, y] = m[y - x, 0] everywhere.
    """
    if tile.n != matrix.n or reference.n != matrix.n:
        raise DimensionError("matrix, tile and reference must share a dimension")
    if 0 not in tile:
        raise ValueError("tile must contain 0")
    col = matrix.m[:, 0]
    for x in tile.sorted():
        if col[x] != reference.weights[x]:
            return MatrixVerdict(False, "C1", (x,))
    inside = tile.mask()
    bad = np.flatnonzero(~inside & (col <= r))
    if bad.size:
        return MatrixVerdict(False, "C2", (int(bad[0]),))
    idx = np.arange(1 << matrix.n)
    expect = col[idx[:, None] ^ idx[None, :]]
    diff = np.argwhere(matrix.m != expect)
    if diff.size:
        x, y = map(int, diff[0])
        return MatrixVerdict(False, "C3", (x, y))
    return MatrixVerdict(True)
