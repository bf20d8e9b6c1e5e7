"""JSON readers and writers for the file formats shared by the library and CLI.

Vectors are always written in text form ('0'/'1', coordinate 1 leftmost).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .hypercube import VectorSet, format_vector, parse_vector
from .metrics import Covering, Poset, WeightTable
from .tilings import Tiling


class FormatError(ValueError):
    pass


def _require(obj: Any, *keys: str) -> None:
    if not isinstance(obj, dict):
        raise FormatError(f"expected a JSON object, got {type(obj).__name__}")
    for k in keys:
        if k not in obj:
            raise FormatError(f"missing key {k!r}")


def poset_from_json(obj: Any) -> Poset:
    _require(obj, "n", "covers")
    try:
        return Poset.from_covers(int(obj["n"]), [tuple(map(int, p)) for p in obj["covers"]])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad poset: {exc}") from exc


def poset_to_json(p: Poset) -> dict:
    return {"n": p.n, "covers": [list(c) for c in p.covers()]}


def covering_from_json(obj: Any) -> Covering:
    _require(obj, "n", "blocks")
    try:
        return Covering.of(int(obj["n"]), [[int(i) for i in b] for b in obj["blocks"]])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad covering: {exc}") from exc


def covering_to_json(f: Covering) -> dict:
    return {"n": f.n, "blocks": f.sorted_blocks()}


def table_from_json(obj: Any) -> WeightTable:
    _require(obj, "n", "weights")
    try:
        return WeightTable(int(obj["n"]), [int(x) for x in obj["weights"]])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad weight table: {exc}") from exc


def table_to_json(t: WeightTable) -> dict:
    return {"n": t.n, "weights": [int(x) for x in t.weights]}


def vectors_from_json(items: Any, n: int) -> VectorSet:
    if not isinstance(items, list):
        raise FormatError("expected a list of vectors")
    try:
        return VectorSet(n, frozenset(parse_vector(str(s), n) for s in items))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def vectors_to_json(s: VectorSet) -> list[str]:
    return s.to_strings()


def set_from_json(obj: Any, prefer: str = "vectors") -> VectorSet:
    """A vector set: ``{"n", "vectors"}``, ``{"n", "tile"}``, ``{"n", "code"}``
    or a bare list of vector strings.

    ``prefer`` picks the key read first, so a tiling file can supply either
    its tile or its code.
    """
    if isinstance(obj, list):
        if not obj:
            raise FormatError("empty vector list without a dimension")
        return vectors_from_json(obj, len(str(obj[0])))
    _require(obj, "n")
    for key in (prefer, "vectors", "tile", "code"):
        if key in obj:
            return vectors_from_json(obj[key], int(obj["n"]))
    raise FormatError("expected one of 'vectors', 'tile', 'code'")


def set_to_json(s: VectorSet) -> dict:
    return {"n": s.n, "vectors": vectors_to_json(s)}


def tiling_from_json(obj: Any) -> Tiling:
    _require(obj, "n", "tile", "code")
    n = int(obj["n"])
    return Tiling(n, vectors_from_json(obj["tile"], n), vectors_from_json(obj["code"], n))


def tiling_to_json(t: Tiling) -> dict:
    return {"n": t.n, "tile": vectors_to_json(t.tile), "code": vectors_to_json(t.code)}


def load(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=False)


__all__ = [
    "FormatError",
    "covering_from_json",
    "covering_to_json",
    "dumps",
    "format_vector",
    "load",
    "poset_from_json",
    "poset_to_json",
    "set_from_json",
    "set_to_json",
    "table_from_json",
    "table_to_json",
    "tiling_from_json",
    "tiling_to_json",
]
