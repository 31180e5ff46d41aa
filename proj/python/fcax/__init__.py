"""Concept-lattice indexing and retrieval for XML documents."""

from ._fcax import (
    Context,
    FcaxError,
    Index,
    build_index,
    canonical_query,
    leaf_data,
    load_index,
)

__all__ = [
    "Context",
    "FcaxError",
    "Index",
    "build_index",
    "canonical_query",
    "leaf_data",
    "load_index",
]
