"""Invariant sweep over graph corpora.

Each check increments a per-criterion counter; failures are collected together
with the offending graph's edge list so they can be replayed. Used by
``istk selftest`` and by the acceptance tests.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

from istk.errors import CountingChainViolation, IstkError
from istk.graph import Graph, bfs_tree
from istk.kernel import KernelOutcome, baseline_kernel_3k, kernelize
from istk.local_search import make_maximal
from istk.oracle import opt_bruteforce, solve_decision, verify_certificate
from istk.reducible import TreeAnalysis, find_reducible

CRITERIA = {
    "oracle_equivalence": "solve_decision agrees with the exhaustive optimum",
    "kernel_bound": "every kernel has at most 2k'-2 (baseline: 3k'-3) vertices",
    "dichotomy": "each maximal tree is half internal or yields |L'| >= 2|N(L')|",
    "exchange_progress": "every exchange step gains an internal vertex; at most n-2 steps per tree",
    "reduction_exactness": "opt(G') = opt(G) - 2|S| + 2; degenerate opt(G) = 2|S| - 1",
    "counting_chain": "reducible-structure inequalities hold on every extraction",
    "lifting": "every YES certificate verifies on the original graph",
    "local_search_below_opt": "a maximal tree never beats the optimum",
    "unexpected_errors": "no invariant assertion fires anywhere",
}


@dataclass
class Report:
    checked: dict[str, int] = field(default_factory=lambda: {k: 0 for k in CRITERIA})
    failures: dict[str, list[str]] = field(default_factory=lambda: {k: [] for k in CRITERIA})
    graphs: int = 0
    seconds: float = 0.0

    def ok(self, name: str) -> None:
        self.checked[name] += 1

    def fail(self, name: str, graph: Graph, msg: str) -> None:
        self.checked[name] += 1
        edges = graph.sorted_edges()
        shown = edges if len(edges) <= 60 else f"{len(edges)} edges, n={graph.n}"
        self.failures[name].append(f"{msg} :: {shown}")

    def check(self, name: str, cond: bool, graph: Graph, msg: str = "") -> None:
        if cond:
            self.ok(name)
        else:
            self.fail(name, graph, msg)

    def passed(self, *names: str) -> bool:
        return all(not self.failures[n] for n in (names or CRITERIA))

    def merge(self, other: "Report") -> None:
        for k in CRITERIA:
            self.checked[k] += other.checked[k]
            self.failures[k].extend(other.failures[k])
        self.graphs += other.graphs
        self.seconds += other.seconds

    def lines(self) -> list[str]:
        out = []
        for name, text in CRITERIA.items():
            status = "PASS" if not self.failures[name] else "FAIL"
            out.append(f"{status} {name}: {self.checked[name]} checks, {len(self.failures[name])} failures ({text})")
        return out


def check_graph(graph: Graph, report: Report, cap: int = 16, oracle_limit: int = 10) -> None:
    """Every check, with the exhaustive optimum as ground truth."""
    report.graphs += 1
    try:
        _check_graph(graph, report, cap, oracle_limit)
    except CountingChainViolation as exc:
        report.fail("counting_chain", graph, str(exc))
    except IstkError as exc:
        report.fail("unexpected_errors", graph, f"{type(exc).__name__}: {exc}")
    else:
        report.ok("unexpected_errors")


def _check_graph(graph: Graph, report: Report, cap: int, oracle_limit: int) -> None:
    n = graph.n
    opt = opt_bruteforce(graph, cap).opt

    tree, _ = make_maximal(graph, bfs_tree(graph))
    report.check("local_search_below_opt", len(tree.internal) <= opt, graph, f"maximal {len(tree.internal)} > opt {opt}")

    _check_run(graph, kernelize(graph, None, keep_log=True), report, oracle_limit, cap)
    for k in range(1, max(n - 2, 0) + 1):
        want = opt >= k
        dec = solve_decision(graph, k, cap)
        report.check("oracle_equivalence", dec.answer == want, graph, f"k={k}: got {dec.answer}, opt={opt}")
        if dec.answer:
            v = verify_certificate(graph, dec.certificate.edges, k) if dec.certificate else None
            report.check("lifting", v is not None and v.accepted, graph, f"k={k}: {v.reason if v else 'no certificate'}")
        out = kernelize(graph, k, keep_log=True)
        _check_run(graph, out, report, oracle_limit, cap)
        base = baseline_kernel_3k(graph, k)
        _check_baseline(graph, base, report)
        for step in base.trace:
            _check_step(step, report, oracle_limit, cap)
        if base.degenerate is not None:
            _check_degenerate(base, report, oracle_limit, cap)
        for run in (out, base):
            if run.kind == "answered":
                report.check(
                    "oracle_equivalence", run.decision == want and run.opt == opt, graph,
                    f"k={k}: answered {run.opt}, opt={opt}",
                )


def check_large(graph: Graph, ks: Iterable[int | None], report: Report) -> None:
    """Oracle-free checks (kernel bound, dichotomy, exchange, chain, lifting) for big instances."""
    report.graphs += 1
    try:
        for k in ks:
            _check_run(graph, kernelize(graph, k, keep_log=True), report, oracle_limit=0, cap=0)
            if k is not None:
                _check_baseline(graph, baseline_kernel_3k(graph, k), report)
    except CountingChainViolation as exc:
        report.fail("counting_chain", graph, str(exc))
    except IstkError as exc:
        report.fail("unexpected_errors", graph, f"{type(exc).__name__}: {exc}")
    else:
        report.ok("unexpected_errors")


def _check_baseline(graph: Graph, run: KernelOutcome, report: Report) -> None:
    if run.kind == "kernel":
        report.check("kernel_bound", run.kernel.n <= 3 * run.k_prime - 3, graph,
                     f"3k k={run.k}: kernel {run.kernel.n}, k'={run.k_prime}")
    elif run.kind == "solved":
        v = verify_certificate(graph, run.certificate.edges, run.k)
        report.check("lifting", v.accepted, graph, f"3k k={run.k}: {v.reason}")


def _check_run(graph: Graph, run: KernelOutcome, report: Report, oracle_limit: int, cap: int) -> None:
    for step in run.exchange_log:
        report.check("exchange_progress", step.after >= step.before + 1, graph, f"{step.rule}: {step.before}->{step.after}")
    for g, tree, structure, nsteps in run.rounds:
        report.check("exchange_progress", nsteps <= max(g.n - 2, 0), graph, f"{nsteps} steps on {g.n} vertices")
        ni = len(tree.internal)
        if 2 * ni >= g.n:
            report.ok("dichotomy")
            continue
        if structure is None:  # the loop stopped early with a certificate; extract anyway
            structure = find_reducible(g, tree, TreeAnalysis(g, tree))
        report.ok("counting_chain")
        lp = structure.independent_set
        good = bool(lp) and g.is_independent(lp) and len(lp) >= 2 * len(g.neighborhood(lp))
        report.check("dichotomy", good, graph, "reducible set violates |L'| >= 2|N(L')|")
    if run.kind == "kernel" and run.k is not None:
        report.check("kernel_bound", run.kernel.n <= 2 * run.k_prime - 2, graph,
                     f"k={run.k}: kernel {run.kernel.n}, k'={run.k_prime}")
    elif run.kind == "solved":
        v = verify_certificate(graph, run.certificate.edges, run.k or 0)
        report.check("lifting", v.accepted, graph, f"k={run.k}: {v.reason}")
    for step in run.trace:
        _check_step(step, report, oracle_limit, cap)
    if run.degenerate is not None:
        _check_degenerate(run, report, oracle_limit, cap)


def _check_step(step, report: Report, oracle_limit: int, cap: int) -> None:
    if step.source.n > oracle_limit:
        return
    before = opt_bruteforce(step.source, cap).opt
    after = opt_bruteforce(step.result, cap).opt
    report.check("reduction_exactness", after == before - step.gain, step.source,
                 f"opt {before} -> {after}, |S|={len(step.s)}")


def _check_degenerate(run: KernelOutcome, report: Report, oracle_limit: int, cap: int) -> None:
    last = run.trace[-1].result if run.trace else run.graph
    if last.n > oracle_limit:
        return
    exact = opt_bruteforce(last, cap).opt
    s = len(run.degenerate.pair.s)
    report.check("reduction_exactness", exact == run.degenerate.opt == 2 * s - 1, last,
                 f"degenerate claims {run.degenerate.opt} with |S|={s}, opt {exact}")


def sweep(graphs: Iterable[Graph], cap: int = 16, oracle_limit: int = 10) -> Report:
    report = Report()
    start = time.perf_counter()
    for g in graphs:
        check_graph(g, report, cap, oracle_limit)
    report.seconds = time.perf_counter() - start
    return report


def run_selftest(max_n: int = 8, n_random: int = 500, seed: int = 0, cap: int = 16) -> Report:
    """The default ``istk selftest`` run: all connected graphs on 4..max_n vertices plus random ones up to 10."""
    from istk.generators import connected_graphs, random_corpus

    report = Report()
    start = time.perf_counter()
    for n in range(4, max_n + 1):
        report.merge(sweep(connected_graphs(n), cap))
    report.merge(sweep(random_corpus(n_random, 10, seed), cap))
    report.seconds = time.perf_counter() - start
    return report
