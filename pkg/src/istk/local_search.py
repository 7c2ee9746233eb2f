"""Local exchanges that grow the number of internal vertices of a spanning tree.

Two exchange rules are applied until neither fires; the result is a *maximal*
spanning tree. Rule 1 joins two leaves through a cotree edge and cuts the tree
next to a branchpoint. Rule 2 swaps a good cotree edge (leaf to internal) for a
tree edge on its path, sometimes followed by one or two Rule-1 moves, and comes
in four cases ``a``-``d``.

Public functions take and return immutable :class:`SpanningTree` values.
``make_maximal`` runs on a mutable :class:`_Work` state to avoid rebuilding the
tree after every move.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from istk.errors import (
    InvariantViolation,
    NoBranchpoint,
    NotApplicable,
    PreconditionViolation,
    StaleCandidate,
)
from istk.graph import Edge, Graph, SpanningTree, assert_leaf_identity, norm, tree_from_edges


@dataclass(frozen=True, order=True)
class GoodEdge:
    """Cotree edge from leaf ``leaf`` to internal vertex ``inner``; the leaf is listed first."""

    leaf: int
    inner: int


@dataclass(frozen=True)
class ExchangeStep:
    rule: str  # R1, R2a, R2b, R2c, R2d
    added: Edge
    removed: Edge
    before: int
    after: int
    followups: tuple[tuple[Edge, Edge], ...] = ()

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "added": list(self.added),
            "removed": list(self.removed),
            "followups": [{"added": list(a), "removed": list(r)} for a, r in self.followups],
            "internal_before": self.before,
            "internal_after": self.after,
        }


@dataclass(frozen=True)
class DetachableSets:
    d2: frozenset[int]
    d: frozenset[int]


@dataclass(frozen=True)
class Rule2Candidate:
    case: str
    good: GoodEdge
    cut: Edge  # (u, v), u closer to the leaf
    l_u: int | None = None
    l_v: int | None = None
    tree_edges: frozenset[Edge] = field(default=frozenset(), compare=False, repr=False)


class _Work:
    """Mutable spanning tree used inside the exchange loop."""

    def __init__(self, graph: Graph, edges):
        self.g = graph
        n = graph.n
        self.adj: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in edges:
            self.adj[u].add(v)
            self.adj[v].add(u)
        self.n_internal = sum(1 for v in range(1, n + 1) if len(self.adj[v]) >= 2)
        self.n_branch = sum(1 for v in range(1, n + 1) if len(self.adj[v]) >= 3)
        self._parent: list[int] | None = None
        self._depth: list[int] = []

    @classmethod
    def of(cls, tree: SpanningTree) -> "_Work":
        return cls(tree.graph, tree.edges)

    def freeze(self) -> SpanningTree:
        edges = [(u, v) for u in range(1, self.g.n + 1) for v in self.adj[u] if u < v]
        tree = tree_from_edges(self.g, edges)
        assert_leaf_identity(tree)
        return tree

    def deg(self, v: int) -> int:
        return len(self.adj[v])

    def is_leaf(self, v: int) -> bool:
        return len(self.adj[v]) == 1

    def is_path(self) -> bool:
        return self.n_branch == 0

    def _bump(self, v: int, delta: int) -> None:
        d = len(self.adj[v])
        old = d - delta
        self.n_internal += (d >= 2) - (old >= 2)
        self.n_branch += (d >= 3) - (old >= 3)

    def swap(self, add: Edge, remove: Edge) -> None:
        a, b = add
        x, y = remove
        self.adj[x].discard(y)
        self.adj[y].discard(x)
        self._bump(x, -1)
        self._bump(y, -1)
        self.adj[a].add(b)
        self.adj[b].add(a)
        self._bump(a, 1)
        self._bump(b, 1)
        self._parent = None

    def _root(self) -> None:
        n = self.g.n
        parent = [0] * (n + 1)
        depth = [0] * (n + 1)
        parent[1] = 1
        queue = deque([1])
        adj = self.adj
        while queue:
            u = queue.popleft()
            du = depth[u] + 1
            for w in adj[u]:
                if not parent[w]:
                    parent[w] = u
                    depth[w] = du
                    queue.append(w)
        parent[1] = 0
        self._parent = parent
        self._depth = depth

    def path(self, u: int, v: int) -> list[int]:
        if self._parent is None:
            self._root()
        parent, depth = self._parent, self._depth
        head, tail = [u], [v]
        a, b = u, v
        while depth[a] > depth[b]:
            a = parent[a]
            head.append(a)
        while depth[b] > depth[a]:
            b = parent[b]
            tail.append(b)
        while a != b:
            a = parent[a]
            b = parent[b]
            head.append(a)
            tail.append(b)
        tail.pop()
        head.extend(reversed(tail))
        return head

    def is_cotree(self, u: int, v: int) -> bool:
        return self.g.has_edge(u, v) and v not in self.adj[u]

    # -- rule 1

    def leaf_pairs(self) -> Iterator[tuple[int, int]]:
        """Cotree edges joining two leaves, as (l1, l2) with l1 < l2, ascending."""
        g, adj = self.g, self.adj
        for l1 in range(1, g.n + 1):
            if len(adj[l1]) != 1:
                continue
            for l2 in g.adj[l1]:
                if l2 > l1 and len(adj[l2]) == 1 and l2 not in adj[l1]:
                    yield l1, l2

    def rule1(self, l1: int, l2: int) -> tuple[Edge, Edge]:
        if not (self.is_leaf(l1) and self.is_leaf(l2) and self.is_cotree(l1, l2)):
            raise NotApplicable(f"({l1}, {l2}) is not a cotree edge between two leaves")
        p = self.path(l1, l2)
        for i in range(1, len(p) - 1):
            if len(self.adj[p[i]]) >= 3:
                cut = (p[i], p[i + 1])
                break
        else:
            raise NoBranchpoint(f"no branchpoint between leaves {l1} and {l2}; the tree is a path")
        added = (l1, l2)
        self.swap(added, cut)
        return added, cut

    def exhaust_rule1(self, steps: list[ExchangeStep]) -> None:
        changed = True
        while changed and not self.is_path():
            changed = False
            for l1, l2 in list(self.leaf_pairs()):
                if self.is_path():
                    return
                if not (self.is_leaf(l1) and self.is_leaf(l2)):
                    continue
                before = self.n_internal
                added, cut = self.rule1(l1, l2)
                _check_gain(before, self.n_internal)
                steps.append(ExchangeStep("R1", added, cut, before, self.n_internal))
                changed = True

    def require_no_rule1(self) -> None:
        for l1, l2 in self.leaf_pairs():
            if not self.is_path():
                raise PreconditionViolation(
                    f"Rule 1 still applies to leaves {l1} and {l2}; exhaust it first"
                )

    # -- good edges, detachability, rule 2

    def good_edges(self) -> list[GoodEdge]:
        g, adj = self.g, self.adj
        out = []
        for l in range(1, g.n + 1):
            if len(adj[l]) != 1:
                continue
            for w in g.adj[l]:
                if len(adj[w]) >= 2 and w not in adj[l]:
                    out.append(GoodEdge(l, w))
        return out

    def good_leaves(self, good: list[GoodEdge]) -> dict[int, list[int]]:
        """Internal vertex -> ascending leaves of the good edges incident to it."""
        by_inner: dict[int, list[int]] = {}
        for e in good:
            by_inner.setdefault(e.inner, []).append(e.leaf)
        return by_inner


class _Detach:
    """Lazy, memoised D2 membership for one fixed tree."""

    def __init__(self, work: _Work, by_inner: dict[int, list[int]]):
        self.work = work
        self.by_inner = by_inner
        self.memo: dict[int, bool] = {}

    def other_leaf(self, v: int, *exclude: int) -> int | None:
        for l in self.by_inner.get(v, ()):
            if l not in exclude:
                return l
        return None

    def __contains__(self, w: int) -> bool:
        hit = self.memo.get(w)
        if hit is None:
            hit = self.memo[w] = self._check(w)
        return hit

    def _check(self, w: int) -> bool:
        work = self.work
        if work.deg(w) != 2:
            return False
        by_inner = self.by_inner
        for l in by_inner.get(w, ()):
            for v in work.path(l, w)[1:]:
                if work.deg(v) >= 3:
                    return True
                if any(x != l for x in by_inner.get(v, ())):
                    return True
        return False


def _scan_rule2(work: _Work, detach: _Detach, good: list[GoodEdge]) -> Rule2Candidate | None:
    deg = work.deg
    for e in good:
        l, w = e.leaf, e.inner
        p = work.path(l, w)
        for i in range(1, len(p) - 1):
            u, v = p[i], p[i + 1]
            u3 = deg(u) >= 3
            v_end = v == w or deg(v) >= 3
            if u3:
                if v_end:
                    return Rule2Candidate("a", e, (u, v))
                if v in detach:
                    lv = detach.other_leaf(v, l)
                    if lv is not None:
                        return Rule2Candidate("b", e, (u, v), l_v=lv)
                continue
            if u not in detach:
                continue
            lu_all = [x for x in detach.by_inner.get(u, ()) if x != l]
            if not lu_all:
                continue
            if v_end:
                return Rule2Candidate("c", e, (u, v), l_u=lu_all[0])
            if v in detach:
                for lu in lu_all:
                    lv = detach.other_leaf(v, l, lu)
                    if lv is not None:
                        return Rule2Candidate("d", e, (u, v), l_u=lu, l_v=lv)
    return None


def _check_gain(before: int, after: int) -> None:
    if after < before + 1:
        raise InvariantViolation(f"exchange step went from {before} to {after} internal vertices")


def _apply_rule2(work: _Work, cand: Rule2Candidate) -> ExchangeStep:
    before = work.n_internal
    added = (cand.good.leaf, cand.good.inner)
    work.swap(added, cand.cut)
    u, v = cand.cut
    follow = []
    if cand.case == "b":
        follow.append(work.rule1(cand.l_v, v))
    elif cand.case == "c":
        follow.append(work.rule1(cand.l_u, u))
    elif cand.case == "d":
        four = (cand.l_u, u, cand.l_v, v)
        if len(set(four)) != 4 or not all(work.is_leaf(x) for x in four):
            raise InvariantViolation(f"case d expected four distinct leaves, got {four}")
        follow.append(work.rule1(cand.l_u, u))
        lv = cand.l_v
        if work.is_leaf(lv) and work.is_leaf(v) and not work.is_path():
            follow.append(work.rule1(lv, v))
    after = work.n_internal
    _check_gain(before, after)
    return ExchangeStep("R2" + cand.case, added, cand.cut, before, after, tuple(follow))


# ---------------------------------------------------------------- public API


def good_cotree_edges(graph: Graph, tree: SpanningTree) -> list[GoodEdge]:
    _same_graph(graph, tree)
    return _Work.of(tree).good_edges()


def crossed_edges(tree: SpanningTree, good: GoodEdge) -> list[Edge]:
    """Tree edges on the path from the leaf to the internal end, oriented away from the leaf."""
    l, w = good.leaf, good.inner
    if tree.degree[l] != 1 or tree.degree[w] < 2 or tree.has_edge(l, w) or not tree.graph.has_edge(l, w):
        raise NotApplicable(f"({l}, {w}) is not a good cotree edge")
    p = _Work.of(tree).path(l, w)
    return list(zip(p, p[1:]))


def apply_rule1(graph: Graph, tree: SpanningTree, l1: int, l2: int) -> tuple[SpanningTree, ExchangeStep]:
    _same_graph(graph, tree)
    work = _Work.of(tree)
    before = work.n_internal
    added, cut = work.rule1(l1, l2)
    _check_gain(before, work.n_internal)
    return work.freeze(), ExchangeStep("R1", added, cut, before, work.n_internal)


def detachable(graph: Graph, tree: SpanningTree) -> DetachableSets:
    _same_graph(graph, tree)
    work = _Work.of(tree)
    work.require_no_rule1()
    detach = _Detach(work, work.good_leaves(work.good_edges()))
    d2 = frozenset(w for w in tree.i2 if w in detach)
    return DetachableSets(d2, d2 | tree.i3)


def find_rule2(graph: Graph, tree: SpanningTree) -> Rule2Candidate | None:
    _same_graph(graph, tree)
    work = _Work.of(tree)
    work.require_no_rule1()
    good = work.good_edges()
    cand = _scan_rule2(work, _Detach(work, work.good_leaves(good)), good)
    if cand is None:
        return None
    return Rule2Candidate(cand.case, cand.good, cand.cut, cand.l_u, cand.l_v, tree.edges)


def apply_rule2(graph: Graph, tree: SpanningTree, cand: Rule2Candidate) -> tuple[SpanningTree, ExchangeStep]:
    _same_graph(graph, tree)
    if cand.tree_edges != tree.edges:
        raise StaleCandidate("candidate was computed against a different tree")
    work = _Work.of(tree)
    step = _apply_rule2(work, cand)
    return work.freeze(), step


def make_maximal(graph: Graph, tree: SpanningTree) -> tuple[SpanningTree, list[ExchangeStep]]:
    """Apply the exchange rules until neither fires; returns the tree and the step log."""
    _same_graph(graph, tree)
    work = _Work.of(tree)
    steps: list[ExchangeStep] = []
    while not work.is_path():
        work.exhaust_rule1(steps)
        if work.is_path():
            break
        good = work.good_edges()
        cand = _scan_rule2(work, _Detach(work, work.good_leaves(good)), good)
        if cand is None:
            break
        steps.append(_apply_rule2(work, cand))
    if len(steps) > max(graph.n - 2, 0):
        raise InvariantViolation(f"{len(steps)} exchange steps on {graph.n} vertices")
    return work.freeze(), steps


def is_maximal(graph: Graph, tree: SpanningTree) -> bool:
    if tree.is_path():
        return True
    work = _Work.of(tree)
    if next(work.leaf_pairs(), None) is not None:
        return False
    good = work.good_edges()
    return _scan_rule2(work, _Detach(work, work.good_leaves(good)), good) is None


def _same_graph(graph: Graph, tree: SpanningTree) -> None:
    if tree.graph is not graph and tree.graph != graph:
        raise PreconditionViolation("tree belongs to a different graph")
