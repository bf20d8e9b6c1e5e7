"""TS-metrics, tilings and perfect codes on the binary Hamming cube."""

from .hypercube import VectorSet, canonical_form, is_downward_closed, is_polyhedromino, rank
from .metrics import (
    Covering,
    Poset,
    WeightTable,
    ball,
    comb_weight,
    decoding_equivalent,
    hamming_table,
    is_ts_ball,
    poset_weight,
    table_from,
    two_level_weight,
    validate_weight,
)
from .tilings import Tiling, complete_tiling, verify_perfect, verify_tiling

__version__ = "0.1.0"

__all__ = [
    "ball",
    "canonical_form",
    "comb_weight",
    "complete_tiling",
    "Covering",
    "decoding_equivalent",
    "hamming_table",
    "is_downward_closed",
    "is_polyhedromino",
    "is_ts_ball",
    "Poset",
    "poset_weight",
    "rank",
    "table_from",
    "Tiling",
    "two_level_weight",
    "validate_weight",
    "VectorSet",
    "verify_perfect",
    "verify_tiling",
    "WeightTable",
]
