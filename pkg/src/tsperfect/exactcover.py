"""Algorithm X for exact cover, with columns held as dict-of-sets.

Rows and columns are arbitrary hashable, orderable labels.  Branching always
takes the column with the fewest live rows (ties broken by column order) and
tries its rows in sorted order, so the search is deterministic.
"""

from __future__ import annotations

from typing import Hashable, Iterator, Mapping, Sequence


def _build(rows: Mapping[Hashable, Sequence[Hashable]], columns: Sequence[Hashable]):
    cols: dict = {c: set() for c in columns}
    for r, cs in rows.items():
        for c in cs:
            cols[c].add(r)
    return cols


def _select(cols: dict, rows: Mapping, r) -> list:
    removed = []
    for c in rows[r]:
        for other in cols[c]:
            for c2 in rows[other]:
                if c2 != c:
                    cols[c2].discard(other)
        removed.append(cols.pop(c))
    return removed


def _deselect(cols: dict, rows: Mapping, r, removed: list) -> None:
    for c in reversed(rows[r]):
        cols[c] = removed.pop()
        for other in cols[c]:
            for c2 in rows[other]:
                if c2 != c:
                    cols[c2].add(other)


def solutions(rows: Mapping[Hashable, Sequence[Hashable]], columns: Sequence[Hashable]) -> Iterator[list]:
    """Yield every selection of rows covering each column exactly once.

    Every column named by a row must appear in ``columns``.
    """
    cols = _build(rows, columns)
    partial: list = []

    def search() -> Iterator[list]:
        if not cols:
            yield list(partial)
            return
        c = min(cols, key=lambda k: len(cols[k]))
        for r in sorted(cols[c]):
            partial.append(r)
            removed = _select(cols, rows, r)
            yield from search()
            _deselect(cols, rows, r, removed)
            partial.pop()

    yield from search()


def first_solution(rows: Mapping[Hashable, Sequence[Hashable]], columns: Sequence[Hashable]) -> list | None:
    for sol in solutions(rows, columns):
        return sol
    return None
