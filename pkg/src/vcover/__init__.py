"""Minimum vertex cover for large sparse graphs.

Reduction rules build a starting cover (and sometimes prove it optimal); a
local search driven by score-bucketed partitions then shrinks it.
"""

from .bench import InstanceRunConfig, run_suite, verify_cover
from .constructors import CoverResult, OptInfo, eliminate_redundant, init_vc, max_gain_construct_vc, min_gain_construct_vc
from .graph import Graph, GraphError, build_graph, random_graph
from .io import DimacsError, RunRecord, emit_records, parse_dimacs, read_dimacs, read_graph
from .oracle import ExactResult, exact_min_vc
from .partitions import AltPartitions, init_partitions
from .search import SearchConfig, SolveOutcome, solve
from .state import SolverState

__all__ = [
    "AltPartitions",
    "CoverResult",
    "DimacsError",
    "ExactResult",
    "Graph",
    "GraphError",
    "InstanceRunConfig",
    "OptInfo",
    "RunRecord",
    "SearchConfig",
    "SolveOutcome",
    "SolverState",
    "build_graph",
    "eliminate_redundant",
    "emit_records",
    "exact_min_vc",
    "init_partitions",
    "init_vc",
    "max_gain_construct_vc",
    "min_gain_construct_vc",
    "parse_dimacs",
    "random_graph",
    "read_dimacs",
    "read_graph",
    "run_suite",
    "solve",
    "verify_cover",
]
