"""Kernelization for spanning trees with many internal vertices.

The main entry points are ``kernelize`` (reduce an instance to at most ``2k' - 2``
vertices), ``solve_decision`` (kernelize, then search the kernel exhaustively) and
``make_maximal`` (local-exchange construction of a maximal spanning tree).
"""

from istk.errors import (
    InputError,
    InvariantViolation,
    IstkError,
    PreconditionError,
    TooLarge,
)
from istk.generators import connected_graphs, generate, random_corpus
from istk.graph import (
    Graph,
    SpanningTree,
    bfs_tree,
    classify,
    dfs_tree,
    parse_graph,
    tree_path,
    validate_spanning_tree,
)
from istk.kernel import KernelOutcome, baseline_kernel_3k, kernelize
from istk.local_search import (
    apply_rule1,
    apply_rule2,
    crossed_edges,
    detachable,
    find_rule2,
    good_cotree_edges,
    is_maximal,
    make_maximal,
)
from istk.oracle import opt_bruteforce, solve_decision, verify_certificate
from istk.reducible import (
    apply_reduction,
    critical_edges,
    d_b_set,
    find_reducible,
    lift_tree,
    two_expansion,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
