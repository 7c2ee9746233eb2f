"""Kernelization driver: alternate maximal trees with reductions until the tree is dense enough.

``kernelize`` produces a kernel with at most ``2k' - 2`` vertices; ``baseline_kernel_3k``
is the older depth-first-search variant with at most ``3k' - 3`` vertices, kept for
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from istk.errors import InternalContradiction, InvariantViolation
from istk.graph import Graph, SpanningTree, bfs_tree, dfs_tree
from istk.local_search import ExchangeStep, _Work, make_maximal
from istk.reducible import (
    DegenerateAnswer,
    ReductionStep,
    TreeAnalysis,
    apply_reduction,
    find_reducible,
    lift_through,
    two_expansion,
)

SCHEMA = 1


@dataclass
class KernelOutcome:
    """Result of a kernelization run.

    ``kind`` is ``"solved"`` (certificate on the original graph), ``"answered"``
    (opt computed exactly, no kernel needed) or ``"kernel"`` (reduced instance).
    """

    kind: str
    graph: Graph  # the original input
    k: int | None
    trace: list[ReductionStep] = field(default_factory=list)
    exchange_steps: int = 0
    certificate: SpanningTree | None = None
    decision: bool | None = None
    opt: int | None = None
    reason: str | None = None
    kernel: Graph | None = None
    k_prime: int | None = None
    kernel_tree: SpanningTree | None = None
    exchange_log: list[ExchangeStep] = field(default_factory=list, repr=False)
    # (graph, maximal tree, reducible structure or None, exchange steps) per round; only with keep_log
    rounds: list[tuple] = field(default_factory=list, repr=False)
    degenerate: DegenerateAnswer | None = None

    @property
    def offset(self) -> int:
        """Internal vertices gained back when lifting through the whole trace."""
        return sum(step.gain for step in self.trace)

    def to_json(self) -> dict:
        out: dict = {
            "schema": SCHEMA,
            "variant": self.kind,
            "n": self.graph.n,
            "m": self.graph.m,
            "k": self.k,
            "reductions": len(self.trace),
            "exchange_steps": self.exchange_steps,
            "trace": [step.to_json() for step in self.trace],
        }
        if self.kind == "solved":
            out["decision"] = True
            out["internal"] = len(self.certificate.internal)
            out["certificate"] = [list(e) for e in self.certificate.labeled_edges()]
        elif self.kind == "answered":
            out["decision"] = self.decision
            out["opt"] = self.opt
            out["reason"] = self.reason
        else:
            out["kernel_n"] = self.kernel.n
            out["kernel_m"] = self.kernel.m
            out["k_prime"] = self.k_prime
            out["kernel"] = self.kernel.to_edgelist()
            out["kernel_tree_internal"] = len(self.kernel_tree.internal)
        return out


def _small_opt(graph: Graph) -> int:
    # connected graphs on at most three vertices: every spanning tree is a path
    return max(graph.n - 2, 0)


def _solved(graph: Graph, k: int | None, trace, tree: SpanningTree, steps: int, log) -> KernelOutcome:
    cert = lift_through(trace, tree)
    if k is not None and len(cert.internal) < k:
        raise InvariantViolation(f"certificate has {len(cert.internal)} internal vertices, k={k}")
    return KernelOutcome("solved", graph, k, trace, steps, certificate=cert, exchange_log=log)


def kernelize(graph: Graph, k: int | None = None, keep_log: bool = False) -> KernelOutcome:
    """Reduce ``(graph, k)`` to a kernel, a certificate, or an exact answer.

    Without ``k`` the loop runs until the maximal tree has at least half of the
    vertices internal and returns that kernel.
    """
    trace: list[ReductionStep] = []
    steps = 0
    log: list[ExchangeStep] = []
    rounds: list[tuple] = []
    cur, kc = graph, k
    while True:
        offset = sum(s.gain for s in trace)
        n = cur.n
        if n <= 3:
            opt = _small_opt(cur)
            tree = bfs_tree(cur)
            if kc is not None and opt >= kc:
                return _solved(graph, k, trace, tree, steps, log)
            if kc is None:
                return KernelOutcome(
                    "kernel", graph, k, trace, steps, kernel=cur, kernel_tree=tree, exchange_log=log
                )
            return KernelOutcome(
                "answered", graph, k, trace, steps, decision=False, opt=opt + offset, reason="small",
                exchange_log=log,
            )
        if kc is not None and kc <= 1:
            return _solved(graph, k, trace, bfs_tree(cur), steps, log)
        tree, xs = make_maximal(cur, bfs_tree(cur))
        steps += len(xs)
        if keep_log:
            log.extend(xs)
        ni = len(tree.internal)
        if kc is not None and ni >= kc:
            if keep_log:
                rounds.append((cur, tree, None, len(xs)))
            out = _solved(graph, k, trace, tree, steps, log)
            out.rounds = rounds
            return out
        if 2 * ni >= n:
            if keep_log:
                rounds.append((cur, tree, None, len(xs)))
            if kc is not None and n > 2 * kc - 2:
                raise InvariantViolation(f"kernel has {n} vertices, bound 2k'-2 = {2 * kc - 2}")
            return KernelOutcome(
                "kernel", graph, k, trace, steps, kernel=cur, k_prime=kc, kernel_tree=tree, exchange_log=log,
                rounds=rounds,
            )
        structure = find_reducible(cur, tree, TreeAnalysis(cur, tree, check=False))
        if keep_log:
            rounds.append((cur, tree, structure, len(xs)))
        res = _reduce(cur, kc, structure.independent_set)
        if isinstance(res, DegenerateAnswer):
            opt = res.opt + offset
            return KernelOutcome(
                "answered", graph, k, trace, steps, decision=None if k is None else opt >= k, opt=opt,
                reason="degenerate", exchange_log=log, rounds=rounds, degenerate=res,
            )
        cur, kc, step = res
        trace.append(step)


def _reduce(graph: Graph, k: int | None, independent):
    pair = two_expansion(graph, independent)
    res = apply_reduction(graph, k, pair)
    if not isinstance(res, DegenerateAnswer) and res[0].n >= graph.n:
        raise InternalContradiction("reduction did not shrink the graph")
    return res


def baseline_kernel_3k(graph: Graph, k: int) -> KernelOutcome:
    """Kernel of at most ``3k' - 3`` vertices from the leaves of a depth-first-search tree."""
    trace: list[ReductionStep] = []
    cur, kc = graph, k
    steps = 0
    while True:
        offset = sum(s.gain for s in trace)
        n = cur.n
        if n <= 3:
            opt = _small_opt(cur)
            if opt >= kc:
                return _solved(graph, k, trace, bfs_tree(cur), steps, [])
            return KernelOutcome("answered", graph, k, trace, steps, decision=False, opt=opt + offset, reason="small")
        tree = dfs_tree(cur)
        if not graph_leaves_independent(cur, tree):
            # the root can be a leaf adjacent to another leaf; Rule 1 repairs that
            work = _Work.of(tree)
            xs: list[ExchangeStep] = []
            work.exhaust_rule1(xs)
            steps += len(xs)
            tree = work.freeze()
        ni = len(tree.internal)
        if ni >= kc:
            return _solved(graph, k, trace, tree, steps, [])
        if n <= 3 * kc - 3:
            return KernelOutcome("kernel", graph, k, trace, steps, kernel=cur, k_prime=kc, kernel_tree=tree)
        leaves = tree.leaves
        if len(leaves) < 2 * len(cur.neighborhood(leaves)):
            raise InternalContradiction("leaf set of the search tree is too small")
        res = _reduce(cur, kc, leaves)
        if isinstance(res, DegenerateAnswer):
            opt = res.opt + offset
            return KernelOutcome(
                "answered", graph, k, trace, steps, decision=opt >= k, opt=opt, reason="degenerate", degenerate=res
            )
        cur, kc, step = res
        trace.append(step)


def graph_leaves_independent(graph: Graph, tree: SpanningTree) -> bool:
    return graph.is_independent(tree.leaves) or tree.is_path()
