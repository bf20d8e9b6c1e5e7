"""Bit-level core of the binary Hamming cube F_2^n.

Vectors are plain Python ints: coordinate ``i`` (1-based) lives in bit ``i-1``,
so ``e_i == 1 << (i - 1)``.  A :class:`VectorSet` bundles a dimension with a
frozenset of such ints.  The text form used in files and on the command line is
a '0'/'1' string whose leftmost character is coordinate 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator

import numpy as np

MAX_DIMENSION = 24
MAX_CANONICAL_DIMENSION = 8


class DimensionError(ValueError):
    """Raised when vectors or sets of different dimensions are mixed."""


def check_dimension(n: int) -> None:
    if not 1 <= n <= MAX_DIMENSION:
        raise DimensionError(f"dimension must lie in [1, {MAX_DIMENSION}], got {n}")


def unit(i: int) -> int:
    """The unit vector e_i (1-based coordinate)."""
    return 1 << (i - 1)


def from_support(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v |= unit(i)
    return v


def support(v: int) -> set[int]:
    out = set()
    i = 1
    while v:
        if v & 1:
            out.add(i)
        v >>= 1
        i += 1
    return out


def hamming_weight(v: int) -> int:
    return bin(v).count("1")


def add(u: int, v: int, n: int | None = None) -> int:
    """Group operation of F_2^n (coordinatewise XOR).

    ``n`` is optional; when given, both operands are checked against it.
    """
    if n is not None and (u >> n or v >> n):
        raise DimensionError(f"operand exceeds dimension {n}")
    return u ^ v


def parse_vector(text: str, n: int | None = None) -> int:
    """Parse the '0'/'1' text form; leftmost character is coordinate 1."""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a binary vector: {text!r}")
    if n is not None and len(text) != n:
        raise DimensionError(f"vector {text!r} has length {len(text)}, expected {n}")
    v = 0
    for i, ch in enumerate(text):
        if ch == "1":
            v |= 1 << i
    return v


def format_vector(v: int, n: int) -> str:
    if v >> n:
        raise DimensionError(f"vector {v} does not fit in dimension {n}")
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


def submasks(v: int) -> Iterator[int]:
    """All y with supp(y) a subset of supp(v), including v and 0."""
    s = v
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & v


def concat(a: int, b: int, n: int) -> int:
    """The concatenation a|b with a occupying coordinates 1..n."""
    return a | (b << n)


def split(x: int, n: int) -> tuple[int, int]:
    return x & ((1 << n) - 1), x >> n


@dataclass(frozen=True)
class VectorSet:
    """A subset of F_2^n."""

    n: int
    members: frozenset[int]

    def __post_init__(self) -> None:
        check_dimension(self.n)
        object.__setattr__(self, "members", frozenset(self.members))
        limit = 1 << self.n
        for v in self.members:
            if not 0 <= v < limit:
                raise DimensionError(f"member {v} does not fit in dimension {self.n}")

    @classmethod
    def from_strings(cls, vectors: Iterable[str], n: int | None = None) -> "VectorSet":
        vectors = list(vectors)
        if n is None:
            if not vectors:
                raise ValueError("cannot infer dimension of an empty vector list")
            n = len(vectors[0].strip())
        return cls(n, frozenset(parse_vector(s, n) for s in vectors))

    @classmethod
    def full(cls, n: int) -> "VectorSet":
        return cls(n, frozenset(range(1 << n)))

    def to_strings(self) -> list[str]:
        return [format_vector(v, self.n) for v in self.sorted()]

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.members)

    def translate(self, c: int) -> "VectorSet":
        return VectorSet(self.n, frozenset(c ^ v for v in self.members))

    def mask(self) -> np.ndarray:
        """Boolean indicator array of length 2^n."""
        out = np.zeros(1 << self.n, dtype=bool)
        out[list(self.members)] = True
        return out

    def concat(self, other: "VectorSet") -> "VectorSet":
        """The product set self|other in F_2^(n+m)."""
        return VectorSet(
            self.n + other.n,
            frozenset(concat(a, b, self.n) for a in self.members for b in other.members),
        )

    def embed(self, n: int) -> "VectorSet":
        """The set self|{0_(n-s)} seen inside F_2^n."""
        if n < self.n:
            raise DimensionError(f"cannot embed dimension {self.n} into {n}")
        return VectorSet(n, self.members)


def _require_same_dimension(*sets: VectorSet) -> None:
    dims = {s.n for s in sets}
    if len(dims) > 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")


def downward_closure_witness(s: VectorSet) -> tuple[int, int] | None:
    """First (x, y) with x in S, supp(y) inside supp(x) and y not in S.

    Members are scanned in increasing order and submasks in increasing order,
    so the witness is deterministic.
    """
    for x in s.sorted():
        for y in sorted(submasks(x)):
            if y not in s.members:
                return x, y
    return None


def is_downward_closed(s: VectorSet) -> bool:
    return downward_closure_witness(s) is None


def geodesic_within(s: VectorSet, x: int, y: int) -> bool:
    """Whether some shortest Hamming path from x to y stays inside S.

    Only coordinates in supp(x ^ y) are flipped, each exactly once, so the
    search is a reachability question on the sub-cube of those flips.
    """
    if x not in s.members or y not in s.members:
        raise ValueError("endpoints must belong to the set")
    diff = x ^ y
    bits = [1 << i for i in range(s.n) if (diff >> i) & 1]
    seen = {0}
    frontier = [0]
    while frontier:
        done = frontier.pop()
        if done == diff:
            return True
        for b in bits:
            if done & b:
                continue
            nxt = done | b
            if nxt not in seen and (x ^ nxt) in s.members:
                seen.add(nxt)
                frontier.append(nxt)
    return False


def is_polyhedromino(s: VectorSet) -> bool:
    if not s.members:
        raise ValueError("polyhedromino test needs a non-empty set")
    pts = s.sorted()
    return all(geodesic_within(s, x, y) for i, x in enumerate(pts) for y in pts[i + 1 :])


def rank(vectors: VectorSet | Iterable[int]) -> int:
    """Dimension of the F_2-span, by elimination on leading bits."""
    members = vectors.members if isinstance(vectors, VectorSet) else vectors
    basis: dict[int, int] = {}
    for v in members:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def coordinates_used(s: VectorSet) -> int:
    """Bitmask of coordinates appearing in some member."""
    acc = 0
    for v in s.members:
        acc |= v
    return acc


def compress(s: VectorSet) -> VectorSet:
    """Relabel the used coordinates onto 1..k, preserving their order.

    For a downward-closed set the result lives in F_2^rank.
    """
    used = [i for i in range(s.n) if (coordinates_used(s) >> i) & 1]
    k = max(len(used), 1)
    out = set()
    for v in s.members:
        w = 0
        for j, i in enumerate(used):
            if (v >> i) & 1:
                w |= 1 << j
        out.add(w)
    return VectorSet(k, frozenset(out))


def permute(v: int, perm: tuple[int, ...]) -> int:
    """Send coordinate i (0-based bit) to coordinate perm[i]."""
    w = 0
    for i, p in enumerate(perm):
        if (v >> i) & 1:
            w |= 1 << p
    return w


def permute_set(s: VectorSet, perm: tuple[int, ...]) -> VectorSet:
    return VectorSet(s.n, frozenset(permute(v, perm) for v in s.members))


@lru_cache(maxsize=None)
def _permutation_images(n: int) -> np.ndarray:
    """Row p, column v holds the image of v under the p-th permutation of [n]."""
    perms = list(permutations(range(n)))
    table = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for i in range(n):
        bit = (np.arange(1 << n) >> i) & 1
        targets = np.array([p[i] for p in perms], dtype=np.int64)
        table += bit[None, :] << targets[:, None]
    return table


def canonical_form(s: VectorSet) -> VectorSet:
    """Least image of S over all coordinate permutations.

    Sets are compared by their sorted member lists; every image has the same
    size, so this is a plain lexicographic order on equal-length sequences.
    """
    if s.n > MAX_CANONICAL_DIMENSION:
        raise DimensionError(
            f"canonical_form enumerates all n! permutations; n={s.n} exceeds {MAX_CANONICAL_DIMENSION}"
        )
    if not s.members:
        return s
    images = _permutation_images(s.n)[:, s.sorted()]
    images.sort(axis=1)
    order = np.lexsort(images.T[::-1])
    best = images[order[0]]
    return VectorSet(s.n, frozenset(int(v) for v in best))


def canonical_key(s: VectorSet) -> tuple[int, ...]:
    return tuple(canonical_form(s).sorted())
