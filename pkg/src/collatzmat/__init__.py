"""Truncated adjacency matrices of the shortcut Collatz map.

Two engines check the same facts: exact sparse matrix powers
(:mod:`collatzmat.matrix`) and successor-array graph scans
(:mod:`collatzmat.graph`).
"""

from .core import (
    CollatzOverflowError,
    Converged,
    CycleDetected,
    TrajectoryRecord,
    Undecided,
    classify_trajectory,
    iterate,
    shortcut_step,
    total_stopping_time,
)
from .graph import (
    CollatzDigraph,
    CycleExists,
    CycleWitness,
    GraphVariant,
    NilpotencyCertificate,
    RangeReport,
    build_digraph,
    depth,
    detect_cycle,
    topological_certificate,
    verify_range,
)
from .matrix import (
    BlockDecomposition,
    SparseBinaryMatrix,
    TraceTable,
    build_A,
    build_C,
    extract_blocks,
    mat_mul,
    mat_power,
    nilpotency_index_matrix,
    trace,
    trace_nilpotency_check,
    trace_table,
)

__version__ = "0.1.0"
