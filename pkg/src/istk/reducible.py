"""Reducible structures on maximal spanning trees and the graph reduction they enable.

Pipeline for a maximal tree with more leaves than internal vertices:

* ``critical_edges`` / ``d_b_set`` analyse the tree,
* ``find_reducible`` returns an independent set ``L'`` of leaves with
  ``|L'| >= 2 |N(L')|``,
* ``two_expansion`` extracts ``(S, L)`` with ``N(L) = S`` plus a witness tree
  on ``S | L`` in which all of ``S`` and ``|S| - 1`` vertices of ``L`` are internal,
* ``apply_reduction`` contracts ``S | L`` into a pendant pair ``v_S - v_L``,
* ``lift_tree`` maps a spanning tree of the reduced graph back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from istk.errors import (
    CountingChainViolation,
    InternalContradiction,
    InvalidPair,
    InvalidTree,
    LiftBoundViolated,
    PreconditionViolation,
)
from istk.graph import Edge, Graph, SpanningTree, norm, validate_spanning_tree
from istk.local_search import GoodEdge, _Detach, _scan_rule2, _Work
from istk.matching import DoubleMatching
from istk.rainbow import rainbow_spanning_tree


class TreeAnalysis:
    """Good edges, crossings and detachable sets of one maximal spanning tree."""

    def __init__(self, graph: Graph, tree: SpanningTree, check: bool = True):
        if tree.graph is not graph and tree.graph != graph:
            raise PreconditionViolation("tree belongs to a different graph")
        self.graph = graph
        self.tree = tree
        work = _Work.of(tree)
        self.work = work
        self.good: list[GoodEdge] = work.good_edges()
        self.by_inner = work.good_leaves(self.good)
        detach = _Detach(work, self.by_inner)
        if check and not tree.is_path():
            if next(work.leaf_pairs(), None) is not None or _scan_rule2(work, detach, self.good) is not None:
                raise PreconditionViolation("spanning tree is not maximal")
        self.d2 = frozenset(w for w in tree.i2 if w in detach)
        self.d = self.d2 | tree.i3
        self._crossed: set[Edge] | None = None
        self._db: frozenset[int] | None = None

    def path(self, u: int, v: int) -> list[int]:
        return self.work.path(u, v)

    @property
    def crossed(self) -> set[Edge]:
        if self._crossed is None:
            out: set[Edge] = set()
            for e in self.good:
                p = self.path(e.leaf, e.inner)
                out.update(norm(a, b) for a, b in zip(p, p[1:]))
            self._crossed = out
        return self._crossed

    def critical(self) -> frozenset[Edge]:
        internal = self.tree.internal
        crossed = self.crossed
        return frozenset(
            e for e in self.tree.edges if e[0] in internal and e[1] in internal and e not in crossed
        )

    @property
    def d_b(self) -> frozenset[int]:
        if self._db is None:
            self._db = self._compute_db()
        return self._db

    def _compute_db(self) -> frozenset[int]:
        d, d2, by_inner = self.d, self.d2, self.by_inner
        out: set[int] = set()
        for e in self.good:
            l = e.leaf
            p = self.path(l, e.inner)
            for a, b in zip(p, p[1:]):
                # a is the endpoint closer to l
                if a in d2 and b in d and by_inner.get(a) == [l]:
                    out.add(a)
        graph, leaves = self.graph, self.tree.leaves
        for u in out:
            hits = [x for x in graph.adj[u] if x in leaves]
            if len(hits) != 1:
                raise InternalContradiction(f"D_B vertex {u} sees leaves {hits}, expected exactly one")
        return frozenset(out)


def critical_edges(graph: Graph, tree: SpanningTree) -> frozenset[Edge]:
    return TreeAnalysis(graph, tree).critical()


def d_b_set(graph: Graph, tree: SpanningTree) -> frozenset[int]:
    return TreeAnalysis(graph, tree).d_b


@dataclass(frozen=True)
class ReducibleStructure:
    component: frozenset[int]
    x: frozenset[int]
    y: frozenset[int]
    x1: frozenset[int]
    x2: frozenset[int]
    x3: frozenset[int]
    y1: frozenset[int]
    y2: frozenset[int]
    y3: frozenset[int]
    y4: frozenset[int]
    d_b: frozenset[int]
    critical: frozenset[Edge]

    @property
    def independent_set(self) -> frozenset[int]:
        return self.x2


def _tree_components(tree: SpanningTree, cut: frozenset[Edge]) -> list[int]:
    comp = [0] * (tree.n + 1)
    adj = tree.adj
    for s in range(1, tree.n + 1):
        if comp[s]:
            continue
        comp[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not comp[y] and norm(x, y) not in cut:
                    comp[y] = s
                    stack.append(y)
    return comp


def find_reducible(graph: Graph, tree: SpanningTree, analysis: TreeAnalysis | None = None) -> ReducibleStructure:
    """Leaves ``X2`` of one component of ``T - C(T)``, independent with ``|X2| >= 2|N(X2)|``."""
    if graph.n < 4:
        raise PreconditionViolation("needs at least four vertices")
    if len(tree.leaves) <= len(tree.internal):
        raise PreconditionViolation(
            f"needs more leaves than internal vertices (|L|={len(tree.leaves)}, |I|={len(tree.internal)})"
        )
    an = analysis or TreeAnalysis(graph, tree)
    leaves, internal = tree.leaves, tree.internal
    crit = an.critical()
    comp = _tree_components(tree, crit)
    members: dict[int, list[int]] = {}
    for v in graph.vertices():
        members.setdefault(comp[v], []).append(v)
    chosen = None
    for root in sorted(members):
        vs = members[root]
        nx_ = sum(1 for v in vs if v in leaves)
        if nx_ >= len(vs) - nx_ + 1:
            chosen = frozenset(vs)
            break
    if chosen is None:
        raise CountingChainViolation("no component of T - C(T) is leaf-heavy")
    x = frozenset(v for v in chosen if v in leaves)
    y = chosen - x
    d, d_b = an.d, an.d_b
    tadj = tree.adj
    x1 = frozenset(v for v in x if any(w in d_b for w in graph.adj[v]))
    x2 = frozenset(v for v in x - x1 if any(w in d for w in tadj[v]))
    x3 = x - x1 - x2
    y1 = d_b & y
    y2 = (d - d_b) & y
    free = _reachable_avoiding(tree, leaves, d)
    y3 = frozenset(v for v in y - d if v in free)
    y4 = y - d - y3
    s = ReducibleStructure(chosen, x, y, x1, x2, x3, y1, y2, y3, y4, d_b, crit)
    _check_counting_chain(graph, s)
    return s


def _reachable_avoiding(tree: SpanningTree, sources: Iterable[int], blocked: frozenset[int]) -> set[int]:
    """Vertices joined to some source by a tree path whose inner vertices avoid ``blocked``."""
    seen = set(sources)
    stack = list(seen)
    adj = tree.adj
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in seen:
                continue
            seen.add(y)
            if y not in blocked:
                stack.append(y)
    return seen


def _check_counting_chain(graph: Graph, s: ReducibleStructure) -> None:
    def fail(msg: str) -> None:
        raise CountingChainViolation(f"reducible-structure bound failed: {msg}")

    if not graph.is_independent(s.x):
        fail("leaves of the component are not independent")
    if not graph.neighborhood(s.x) <= s.y:
        fail("N(X) escapes Y")
    if len(s.x1) > len(s.y1):
        fail(f"|X1|={len(s.x1)} > |Y1|={len(s.y1)}")
    if len(s.x3) > len(s.y3):
        fail(f"|X3|={len(s.x3)} > |Y3|={len(s.y3)}")
    if len(s.y4) < len(s.y2) - 1:
        fail(f"|Y4|={len(s.y4)} < |Y2|-1={len(s.y2) - 1}")
    nx2 = graph.neighborhood(s.x2)
    if not nx2 <= s.y2:
        fail("N(X2) not inside Y2")
    if not s.x2 or len(s.x2) < 2 * len(nx2):
        fail(f"|X2|={len(s.x2)} < 2|N(X2)|={2 * len(nx2)}")


# ---------------------------------------------------------------- 2-expansion


@dataclass(frozen=True)
class ExpansionPair:
    s: tuple[int, ...]
    l: tuple[int, ...]
    assignment: dict[int, tuple[int, int]] = field(compare=False)
    # spanning tree of the S-L bipartite subgraph: every S vertex and |S|-1 L vertices internal
    witness: tuple[Edge, ...] = field(compare=False)

    def to_json(self) -> dict:
        return {
            "S": list(self.s),
            "L": list(self.l),
            "assignment": {str(k): list(v) for k, v in sorted(self.assignment.items())},
            "witness": [list(e) for e in self.witness],
        }


def _inner(graph: Graph, pool: Iterable[int], allowed: set[int]) -> list[int]:
    return [x for x in pool if all(w in allowed for w in graph.adj[x])]


def _dense_subset(graph: Graph, hs: set[int], pool: list[int]) -> set[int] | None:
    """A nonempty A within ``hs`` with at least 2|A| vertices of ``pool`` seeing only A, or None.

    Every vertex of ``pool`` must have all its neighbours in ``hs``.
    """
    if not pool:
        return None
    nbrs = {x: graph.adj[x] for x in pool}
    m = DoubleMatching(pool, hs, nbrs)
    if m.size() < len(pool):
        _, right = m.reach_from_unmatched_left()
        return right or None
    # perfect on the pool side: look for a tight set, closed under "owners' neighbours"
    bad = {h for h in hs if not m.saturated(h)}
    succ: dict[int, set[int]] = {}
    for h in hs:
        out: set[int] = set()
        for x in m.owners[h]:
            out.update(graph.adj[x])
        succ[h] = out
    pred: dict[int, list[int]] = {h: [] for h in hs}
    for h, out in succ.items():
        for t in out:
            pred[t].append(h)
    stack = list(bad)
    while stack:
        t = stack.pop()
        for h in pred[t]:
            if h not in bad:
                bad.add(h)
                stack.append(h)
    good = sorted(hs - bad)
    if not good:
        return None
    start = good[0]
    closure = {start}
    stack = [start]
    while stack:
        h = stack.pop()
        for t in succ[h]:
            if t not in closure:
                closure.add(t)
                stack.append(t)
    return closure


def _minimal_dense(graph: Graph, s: set[int], l: list[int]) -> tuple[set[int], list[int]]:
    """Shrink S until no nonempty proper subset A has |inner(A)| >= 2|A|."""
    while True:
        for v in sorted(s):
            rest = s - {v}
            pool = [x for x in l if v not in graph.adj[x]]
            a = _dense_subset(graph, rest, pool)
            if a is not None:
                s = a
                l = _inner(graph, l, a)
                if len(l) < 2 * len(s):
                    raise InternalContradiction("shrunken expansion lost density")
                break
        else:
            return s, l


def two_expansion(graph: Graph, independent: Iterable[int]) -> ExpansionPair:
    """Extract (S, L) with N(L) = S, a 2-expansion of S into L and a witness tree.

    S is shrunk to an inclusion-minimal set with |{x in L : N(x) within S}| >= 2|S|;
    minimality is what makes the witness tree exist.
    """
    lp = sorted(set(independent))
    if not lp:
        raise PreconditionViolation("independent set is empty")
    if not graph.is_independent(lp):
        raise PreconditionViolation("set is not independent")
    if any(graph.degree(x) == 0 for x in lp):
        raise PreconditionViolation("set contains an isolated vertex")
    h = graph.neighborhood(lp)
    if len(lp) < 2 * len(h):
        raise PreconditionViolation(f"|L'|={len(lp)} < 2|N(L')|={2 * len(h)}")
    s, l = _minimal_dense(graph, set(h), lp)
    m = DoubleMatching(l, s, {x: graph.adj[x] for x in l})
    if not all(m.saturated(v) for v in s):
        raise InternalContradiction("minimal dense set has no 2-expansion")
    assignment = {v: tuple(sorted(m.owners[v])) for v in sorted(s)}
    witness = _witness_tree(graph, sorted(s), l, assignment)
    return ExpansionPair(tuple(sorted(s)), tuple(l), assignment, tuple(witness))


def _witness_tree(graph: Graph, s: list[int], l: list[int], assignment: dict[int, tuple[int, int]]) -> list[Edge]:
    idx = {v: i for i, v in enumerate(s)}
    owner = {p: v for v, pair in assignment.items() for p in pair}
    colored = []
    for y in l:
        ns = [idx[w] for w in graph.adj[y]]
        if y in owner:
            a = idx[owner[y]]
            colored.extend((y, min(a, b), max(a, b)) for b in ns if b != a)
        else:
            colored.extend((y, ns[i], ns[j]) for i in range(len(ns)) for j in range(i + 1, len(ns)))
    chosen = rainbow_spanning_tree(len(s), colored)
    if chosen is None:
        raise InternalContradiction("no rainbow spanning tree over the expansion")
    edges: set[Edge] = set()
    for v, (p1, p2) in assignment.items():
        edges.add(norm(v, p1))
        edges.add(norm(v, p2))
    used = set(owner)
    for i in chosen:
        y, a, b = colored[i]
        sa, sb = s[a], s[b]
        if y in owner:
            other = sb if owner[y] == sa else sa
            edges.add(norm(y, other))
        else:
            edges.add(norm(sa, y))
            edges.add(norm(sb, y))
            used.add(y)
    for y in l:
        if y not in used:
            edges.add(norm(min(graph.adj[y]), y))
    out = sorted(edges)
    _check_witness(s, l, out)
    return out


def _check_witness(s: Sequence[int], l: Sequence[int], edges: list[Edge]) -> None:
    verts = set(s) | set(l)
    if len(edges) != len(verts) - 1:
        raise InternalContradiction("witness is not a tree")
    deg: dict[int, int] = {v: 0 for v in verts}
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        adj[a].append(b)
        adj[b].append(a)
    start = s[0]
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if seen != verts:
        raise InternalContradiction("witness is disconnected")
    if any(deg[v] < 2 for v in s):
        raise InternalContradiction("witness leaves an S vertex as a leaf")
    if sum(1 for v in l if deg[v] >= 2) < len(s) - 1:
        raise InternalContradiction("witness has fewer than |S|-1 internal L vertices")


def check_pair(graph: Graph, pair: ExpansionPair) -> None:
    s, l = set(pair.s), set(pair.l)
    if not s or not l:
        raise InvalidPair("S and L must be nonempty")
    if s & l:
        raise InvalidPair("S and L overlap")
    if not graph.is_independent(l):
        raise InvalidPair("L is not independent")
    if graph.neighborhood(l) != s:
        raise InvalidPair("N(L) differs from S")
    seen: set[int] = set()
    if set(pair.assignment) != s:
        raise InvalidPair("assignment must cover exactly S")
    for v, (p1, p2) in pair.assignment.items():
        for p in (p1, p2):
            if p not in l or p in seen or not graph.has_edge(v, p):
                raise InvalidPair(f"bad private vertex {p} for {v}")
            seen.add(p)
    for a, b in pair.witness:
        if not graph.has_edge(a, b) or not ((a in s and b in l) or (a in l and b in s)):
            raise InvalidPair(f"witness edge {(a, b)} is not an S-L edge")
    try:
        _check_witness(sorted(s), sorted(l), list(pair.witness))
    except InternalContradiction as exc:
        raise InvalidPair(str(exc)) from None


# ---------------------------------------------------------------- reduction


@dataclass(frozen=True)
class ReductionStep:
    s: tuple[int, ...]
    l: tuple[int, ...]
    assignment: dict[int, tuple[int, int]] = field(compare=False)
    witness: tuple[Edge, ...] = field(compare=False)
    attach: tuple[int, ...] = ()
    k_before: int | None = None
    k_after: int | None = None
    # old_of_new[i] is the source vertex of reduced vertex i (0 for v_S and v_L)
    old_of_new: tuple[int, ...] = ()
    v_s: int = 0
    v_l: int = 0
    source: Graph | None = field(default=None, compare=False, repr=False)
    result: Graph | None = field(default=None, compare=False, repr=False)

    @property
    def gain(self) -> int:
        return 2 * len(self.s) - 2

    def to_json(self) -> dict:
        lab = self.source.labels
        return {
            "S": [lab[v] for v in self.s],
            "L": [lab[v] for v in self.l],
            "assignment": {str(lab[v]): [lab[p] for p in ps] for v, ps in sorted(self.assignment.items())},
            "witness": [[lab[a], lab[b]] for a, b in self.witness],
            "attach": [lab[v] for v in self.attach],
            "k": self.k_before,
            "k_prime": self.k_after,
            "n_before": self.source.n,
            "n_after": self.result.n,
            "v_S": self.result.labels[self.v_s],
            "v_L": self.result.labels[self.v_l],
        }


@dataclass(frozen=True)
class DegenerateAnswer:
    """S and L consume the whole graph; opt is then exactly 2|S| - 1."""

    opt: int
    pair: ExpansionPair


def apply_reduction(
    graph: Graph, k: int | None, pair: ExpansionPair
) -> tuple[Graph, int | None, ReductionStep] | DegenerateAnswer:
    check_pair(graph, pair)
    s, l = set(pair.s), set(pair.l)
    attach = sorted(graph.neighborhood(s) - l)
    if not attach:
        if len(s) + len(l) != graph.n:
            raise InternalContradiction("S and L have no outside neighbours but do not cover the graph")
        return DegenerateAnswer(2 * len(s) - 1, pair)
    keep = [v for v in graph.vertices() if v not in s and v not in l]
    new_of_old = {v: i for i, v in enumerate(keep, start=1)}
    v_s, v_l = len(keep) + 1, len(keep) + 2
    edges = [(new_of_old[a], new_of_old[b]) for a, b in graph.edges if a in new_of_old and b in new_of_old]
    edges.extend((new_of_old[a], v_s) for a in attach)
    edges.append((v_s, v_l))
    top = max(graph.labels[1:])
    labels = [graph.labels[v] for v in keep] + [top + 1, top + 2]
    reduced = Graph(v_l, edges, labels=labels)
    k_after = None if k is None else k - 2 * len(s) + 2
    step = ReductionStep(
        s=pair.s,
        l=pair.l,
        assignment=pair.assignment,
        witness=pair.witness,
        attach=tuple(attach),
        k_before=k,
        k_after=k_after,
        old_of_new=(0, *keep, 0, 0),
        v_s=v_s,
        v_l=v_l,
        source=graph,
        result=reduced,
    )
    if reduced.n > graph.n - 1:
        raise InternalContradiction("reduction did not shrink the graph")
    return reduced, k_after, step


def lift_tree(step: ReductionStep, tree: SpanningTree) -> SpanningTree:
    """Map a spanning tree of the reduced graph to one of the source graph."""
    if tree.graph is not step.result and tree.graph != step.result:
        raise InvalidTree("tree does not span the reduced graph of this step")
    g = step.source
    old = step.old_of_new
    v_s, v_l = step.v_s, step.v_l
    edges: list[Edge] = list(step.witness)
    for a, b in tree.sorted_edges():
        if {a, b} == {v_s, v_l}:
            continue
        if v_l in (a, b):
            raise InvalidTree("v_L must be a pendant of v_S")
        if v_s in (a, b):
            x = old[b if a == v_s else a]
            hook = next(v for v in step.s if g.has_edge(v, x))
            edges.append(norm(hook, x))
        else:
            edges.append(norm(old[a], old[b]))
    lifted = validate_spanning_tree(g, edges)
    need = len(tree.internal) + step.gain
    if len(lifted.internal) < need:
        raise LiftBoundViolated(f"lifted tree has {len(lifted.internal)} internal vertices, need {need}")
    return lifted


def lift_through(trace: Sequence[ReductionStep], tree: SpanningTree) -> SpanningTree:
    for step in reversed(trace):
        tree = lift_tree(step, tree)
    return tree


def reachable_separation_holds(an: TreeAnalysis) -> bool:
    """Check that detachable non-D_B vertices in one part of T - C(T) are separated.

    For every such pair u, w the tree path between them must pass a vertex of
    I(T) - D(T) from which every leaf's path runs through D(T). Vacuous on
    Hamiltonian paths, which are optimal and never analysed by the kernel loop.
    """
    tree = an.tree
    if tree.is_path():
        return True
    d, d_b = an.d, an.d_b
    free = _reachable_avoiding(tree, tree.leaves, d)
    sep = {v for v in tree.internal - d if v not in free}
    crit = an.critical()
    comp = _tree_components(tree, crit)
    cand = sorted(d - d_b)
    for i, u in enumerate(cand):
        for w in cand[i + 1 :]:
            if comp[u] != comp[w]:
                continue
            p = an.path(u, w)
            if not any(v in sep for v in p[1:-1]):
                return False
    return True


def critical_by_cuts(an: TreeAnalysis) -> frozenset[Edge]:
    """Critical edges recomputed independently: cut each internal edge and look for a good edge across."""
    tree = an.tree
    out = set()
    for e in tree.edges:
        a, b = e
        if a not in tree.internal or b not in tree.internal:
            continue
        side = {a}
        stack = [a]
        while stack:
            x = stack.pop()
            for y in tree.adj[x]:
                if y not in side and norm(x, y) != e:
                    side.add(y)
                    stack.append(y)
        if not any((g.leaf in side) != (g.inner in side) for g in an.good):
            out.add(e)
    return frozenset(out)

