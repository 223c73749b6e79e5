"""Treewidth-aware all-pairs shortest paths on weighted directed graphs."""

from .apsp import (
    DistanceMatrix, chleq_apsp, floyd_warshall, johnson, min_paths_sssp,
    reconstruct_path, snowball, snowball_separators,
)
from .clique_tree import CliqueTree, NotChordalError, build_clique_tree, separator_stats, validate_clique_tree
from .consistency import DpcGraph, PpcGraph, dpc, p3c
from .graph import Graph, GraphError, NegativeCycleError, from_edges, oracle_apsp
from .heaps import BinaryHeap, FibonacciHeap, HeapKind
from .ordering import Heuristic, VertexOrdering, order_vertices, triangulate

__version__ = "0.1.0"
