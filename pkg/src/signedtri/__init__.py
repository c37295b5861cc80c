"""Streaming estimators for signed triangle counts and triangular balance."""
__version__ = "0.1.0"

from .graph import (  # noqa: E402
    GraphValidationError,
    SignedGraph,
    TriangleCounts,
    UndefinedBalanceError,
    balance_exact,
    count_triangles_exact,
    generate_er_signed,
    graph_params,
    make_graph,
)
from .stream import SignedEdgeStream, StreamMode, make_stream, parse_stream, serialize_stream, to_stream  # noqa: E402
from .orchestrator import (  # noqa: E402
    InfeasiblePlanError,
    WorkerPool,
    balance_classical,
    balance_hybrid,
    classical_count,
    hybrid_count,
)
from .api import (  # noqa: E402
    ClassicalBalanceEstimator,
    ClassicalTriangleEstimator,
    HybridBalanceEstimator,
    HybridTriangleEstimator,
)

__all__ = [
    "ClassicalBalanceEstimator", "ClassicalTriangleEstimator", "GraphValidationError",
    "HybridBalanceEstimator", "HybridTriangleEstimator", "InfeasiblePlanError", "SignedEdgeStream",
    "SignedGraph", "StreamMode", "TriangleCounts", "UndefinedBalanceError", "WorkerPool",
    "balance_classical", "balance_exact", "balance_hybrid", "classical_count", "count_triangles_exact",
    "generate_er_signed", "graph_params", "hybrid_count", "make_graph", "make_stream", "parse_stream",
    "serialize_stream", "to_stream",
]
