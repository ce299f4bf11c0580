"""Incremental cycle detection, topological ordering and strong components."""

from .dense import BucketHeap, DenseEngine
from .dsu import DisjointSets, PairMatrix
from .graph import (
    Arc,
    ArcStream,
    ArcStreamError,
    BoundsError,
    InsertionOutcome,
    Outcome,
    PoisonedEngineError,
    TraversalCounters,
    UsageError,
    format_arc_stream,
    parse_arc_stream,
)
from .scc import SccDenseEngine, SccSparseEngine
from .sparse import SparseEngine, ideal_delta

__all__ = [
    "Arc",
    "ArcStream",
    "ArcStreamError",
    "BoundsError",
    "BucketHeap",
    "DenseEngine",
    "DisjointSets",
    "InsertionOutcome",
    "Outcome",
    "PairMatrix",
    "PoisonedEngineError",
    "SccDenseEngine",
    "SccSparseEngine",
    "SparseEngine",
    "TraversalCounters",
    "UsageError",
    "format_arc_stream",
    "ideal_delta",
    "parse_arc_stream",
]
