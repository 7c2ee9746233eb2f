"""Exact ground truth for small graphs, and decision solving on top of the kernel."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

from istk.errors import PreconditionError, TooLarge
from istk.graph import Graph, SpanningTree, bfs_tree, dfs_tree, tree_from_edges, validate_spanning_tree
from istk.kernel import kernelize
from istk.reducible import lift_through

DEFAULT_CAP = 16


def default_cap() -> int:
    raw = os.environ.get("ISTK_CAP")
    return int(raw) if raw else DEFAULT_CAP


@dataclass(frozen=True)
class OptResult:
    opt: int
    witness: SpanningTree


def opt_bruteforce(graph: Graph, cap: int | None = None) -> OptResult:
    """Maximum number of internal vertices over all spanning trees, by include/exclude search.

    Prunes with two upper bounds: vertices that can still reach tree degree two,
    and ``n - 2`` minus the branching excess already committed.
    """
    cap = default_cap() if cap is None else cap
    n = graph.n
    if n > cap:
        raise TooLarge(f"graph has {n} vertices, oracle cap is {cap}")
    if n <= 2:
        return OptResult(0, bfs_tree(graph))
    # tree edges first: the first leaf of the search is already a spanning tree
    first = dfs_tree(graph).sorted_edges()
    order = first + sorted(graph.edges - set(first))
    m = len(order)
    deg = [0] * (n + 1)
    rem = [0] * (n + 1)
    for u, v in order:
        rem[u] += 1
        rem[v] += 1
    parent = list(range(n + 1))
    size = [1] * (n + 1)
    chosen: list[tuple[int, int]] = []
    best = [-1, []]
    ceiling = n - 2
    excess = [0]

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def still_connected(i: int) -> bool:
        # edges chosen so far plus order[i+1:] must span the graph
        p = list(range(n + 1))

        def f(x: int) -> int:
            while p[x] != x:
                p[x] = p[p[x]]
                x = p[x]
            return x

        parts = n
        for u, v in chosen:
            a, b = f(u), f(v)
            if a != b:
                p[a] = b
                parts -= 1
        for u, v in order[i + 1 :]:
            a, b = f(u), f(v)
            if a != b:
                p[a] = b
                parts -= 1
        return parts == 1

    def bound() -> int:
        reachable = sum(1 for v in range(1, n + 1) if deg[v] + rem[v] >= 2)
        return min(reachable, ceiling - excess[0])

    def go(i: int) -> bool:
        if len(chosen) == n - 1:
            val = sum(1 for v in range(1, n + 1) if deg[v] >= 2)
            if val > best[0]:
                best[0] = val
                best[1] = list(chosen)
            return val == ceiling
        if i == m or bound() <= best[0]:
            return False
        u, v = order[i]
        rem[u] -= 1
        rem[v] -= 1
        ru, rv = find(u), find(v)
        done = False
        if ru != rv:
            if size[ru] > size[rv]:
                ru, rv = rv, ru
            parent[ru] = rv
            size[rv] += size[ru]
            gained = (deg[u] >= 2) + (deg[v] >= 2)
            deg[u] += 1
            deg[v] += 1
            excess[0] += gained
            chosen.append((u, v))
            done = go(i + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
            excess[0] -= gained
            parent[ru] = ru
            size[rv] -= size[ru]
            if not done and still_connected(i):
                done = go(i + 1)
        else:
            done = go(i + 1)
        rem[u] += 1
        rem[v] += 1
        return done

    go(0)
    if best[0] < 0:
        raise PreconditionError("graph has no spanning tree")
    return OptResult(best[0], tree_from_edges(graph, best[1]))


@dataclass(frozen=True)
class Decision:
    answer: bool
    certificate: SpanningTree | None
    opt: int | None = None
    via: str = ""


def solve_decision(graph: Graph, k: int, cap: int | None = None) -> Decision:
    """Does ``graph`` have a spanning tree with at least ``k`` internal vertices?"""
    out = kernelize(graph, k)
    if out.kind == "solved":
        return Decision(True, out.certificate, via="kernelize")
    if out.kind == "answered":
        return Decision(out.decision, None, opt=out.opt, via=out.reason)
    exact = opt_bruteforce(out.kernel, cap)
    opt = exact.opt + out.offset
    if exact.opt >= out.k_prime:
        cert = lift_through(out.trace, exact.witness)
        return Decision(True, cert, opt=opt, via="kernel+oracle")
    return Decision(False, None, opt=opt, via="kernel+oracle")


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str
    internal: int | None = None


def verify_certificate(graph: Graph, edges: Iterable[tuple[int, int]], k: int) -> Verdict:
    try:
        tree = validate_spanning_tree(graph, edges)
    except PreconditionError as exc:
        return Verdict(False, f"{type(exc).__name__}: {exc}")
    got = len(tree.internal)
    if got < k:
        return Verdict(False, f"only {got} internal vertices, need {k}", got)
    return Verdict(True, f"{got} internal vertices >= {k}", got)
