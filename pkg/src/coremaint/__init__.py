"""Incremental k-core maintenance for dynamic graphs.

The library keeps every vertex's core number current while edges are
inserted and removed, using a single total order over vertices (grouped
into blocks by core number) backed by a label-based order-maintenance
list.  A brute-force recomputation oracle and a differential fuzz harness
live alongside for verification, and `coremaint.cli` exposes the benchmark
and validation commands.

Typical use:

    g = load_edge_list(open("graph.txt"))
    cs = decompose(g)
    edge_insert(g, cs, 0, 7)
    edge_remove(g, cs, 3, 4)
    print(cs.core)
"""

from .decompose import CoreState, decompose, validate_quiescent
from .graph import Graph, ParseError, dump_edge_list, load_edge_list, sample_edges
from .maintain import (
    OpStats,
    batch_edge_insert,
    compute_mcd,
    edge_insert,
    edge_remove,
)
from .oracle import FuzzReport, fuzz, naive_cores, random_graph
from .order_list import DuplicateVertexError, OrderItem, OrderList

__all__ = [
    "CoreState",
    "DuplicateVertexError",
    "FuzzReport",
    "Graph",
    "OpStats",
    "OrderItem",
    "OrderList",
    "ParseError",
    "batch_edge_insert",
    "compute_mcd",
    "decompose",
    "dump_edge_list",
    "edge_insert",
    "edge_remove",
    "fuzz",
    "load_edge_list",
    "naive_cores",
    "random_graph",
    "sample_edges",
    "validate_quiescent",
]

__version__ = "0.1.0"
