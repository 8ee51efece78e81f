"""Pairwise must-link / cannot-link constraints built per batch."""

from clusternet.constraints.pairs import (
    PairSet,
    PairSource,
    append_pairs,
    pairs_frame,
    pairs_from_labels,
    pairs_from_predictions,
    sample_pairs,
)

__all__ = [
    "PairSet",
    "PairSource",
    "append_pairs",
    "pairs_frame",
    "pairs_from_labels",
    "pairs_from_predictions",
    "sample_pairs",
]
