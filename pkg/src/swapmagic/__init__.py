"""Toolkit for swap-robust, almost-supermagic edge labelings of complete graphs."""

from .graphcore import (
    EdgeLabeling,
    LabelingError,
    SwapRecord,
    alpha_of,
    edge_count,
    edge_index,
    edge_of_index,
    from_edge_labels,
    identity_labeling,
    load_labeling,
    save_labeling,
    vertex_sums,
)
from .squares import base_square, check_weaving, little_square, weaving_square

__all__ = [
    "EdgeLabeling",
    "LabelingError",
    "SwapRecord",
    "alpha_of",
    "edge_count",
    "edge_index",
    "edge_of_index",
    "from_edge_labels",
    "identity_labeling",
    "load_labeling",
    "save_labeling",
    "vertex_sums",
    "base_square",
    "check_weaving",
    "little_square",
    "weaving_square",
]
