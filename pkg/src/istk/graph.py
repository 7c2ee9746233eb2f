"""Graph and spanning-tree value types, validation, tree paths and file formats.

Vertices are dense integer ids ``1..n``. Every graph keeps a ``labels`` tuple
mapping ids back to the labels they were read with, so output can be written in
the caller's numbering.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from istk.errors import (
    Disconnected,
    InvariantViolation,
    NotSimple,
    NotSpanning,
    NotSubgraph,
    NotTree,
    ParseError,
    UnknownVertex,
)

Edge = tuple[int, int]


def norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple connected undirected graph on vertices ``1..n``."""

    __slots__ = ("n", "adj", "_adjset", "edges", "labels")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[int] | None = None,
        check_connected: bool = True,
    ):
        if n < 1:
            raise ParseError("a graph needs at least one vertex")
        nbrs: list[set[int]] = [set() for _ in range(n + 1)]
        edge_set: set[Edge] = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise UnknownVertex(f"edge ({u}, {v}) leaves the range 1..{n}")
            if u == v:
                raise NotSimple(f"self-loop at vertex {u}")
            e = norm(u, v)
            if e in edge_set:
                raise NotSimple(f"duplicate edge {e}")
            edge_set.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._adjset: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)
        self.edges: frozenset[Edge] = frozenset(edge_set)
        if labels is None:
            labels = range(n + 1)
        else:
            labels = (0, *labels)
            if len(labels) != n + 1:
                raise ValueError("need exactly one label per vertex")
        self.labels: tuple[int, ...] = tuple(labels)
        if check_connected and not self.is_connected():
            raise Disconnected("graph is not connected")

    @classmethod
    def from_labeled_edges(cls, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from edges over arbitrary integer labels, renumbering them 1..n."""
        pairs = list(pairs)
        names = sorted({x for p in pairs for x in p})
        if not names:
            raise ParseError("no edges given")
        index = {name: i for i, name in enumerate(names, start=1)}
        return cls(len(names), [(index[a], index[b]) for a, b in pairs], labels=names)

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjset[u]

    def neighborhood(self, vertices: Iterable[int]) -> set[int]:
        """N_G(U): all neighbours of U that are not themselves in U."""
        vs = set(vertices)
        out: set[int] = set()
        for v in vs:
            out.update(self.adj[v])
        return out - vs

    def is_connected(self) -> bool:
        seen = bytearray(self.n + 1)
        seen[1] = 1
        stack = [1]
        count = 1
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    stack.append(w)
        return count == self.n

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self._adjset[v] & vs) for v in vs)

    def label(self, v: int) -> int:
        return self.labels[v]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def to_edgelist(self) -> str:
        return "".join(f"{self.labels[u]} {self.labels[v]}\n" for u, v in self.sorted_edges())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class SpanningTree:
    """A validated spanning tree of ``graph``; degrees and the leaf/I2/I3 split are cached."""

    __slots__ = ("graph", "edges", "degree", "leaves", "internal", "i2", "i3", "_adj")

    def __init__(self, graph: Graph, edges: frozenset[Edge], degree: tuple[int, ...]):
        # Trusted constructor; use validate_spanning_tree for untrusted edge sets.
        self.graph = graph
        self.edges = edges
        self.degree = degree
        self.leaves = frozenset(v for v in graph.vertices() if degree[v] <= 1)
        self.i2 = frozenset(v for v in graph.vertices() if degree[v] == 2)
        self.i3 = frozenset(v for v in graph.vertices() if degree[v] >= 3)
        self.internal = self.i2 | self.i3
        self._adj: tuple[tuple[int, ...], ...] | None = None

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        if self._adj is None:
            nbrs: list[list[int]] = [[] for _ in range(self.graph.n + 1)]
            for u, v in self.edges:
                nbrs[u].append(v)
                nbrs[v].append(u)
            self._adj = tuple(tuple(sorted(x)) for x in nbrs)
        return self._adj

    def num_internal(self) -> int:
        return len(self.internal)

    def is_path(self) -> bool:
        return not self.i3

    def has_edge(self, u: int, v: int) -> bool:
        return norm(u, v) in self.edges

    def cotree_edges(self) -> list[Edge]:
        return sorted(self.graph.edges - self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def labeled_edges(self) -> list[tuple[int, int]]:
        lab = self.graph.labels
        return [(lab[u], lab[v]) for u, v in self.sorted_edges()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpanningTree):
            return NotImplemented
        return self.graph == other.graph and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"SpanningTree(n={self.n}, internal={len(self.internal)})"


def validate_spanning_tree(graph: Graph, edges: Iterable[tuple[int, int]]) -> SpanningTree:
    edge_set: set[Edge] = set()
    for u, v in edges:
        if not (1 <= u <= graph.n and 1 <= v <= graph.n):
            raise NotSubgraph(f"edge ({u}, {v}) uses an unknown vertex")
        e = norm(u, v)
        if not graph.has_edge(u, v):
            raise NotSubgraph(f"edge {e} is not an edge of the graph")
        if e in edge_set:
            raise NotTree(f"edge {e} listed twice")
        edge_set.add(e)
    n = graph.n
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edge_set:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotTree(f"edge {(u, v)} closes a cycle")
        parent[ru] = rv
    if len(edge_set) != n - 1:
        raise NotSpanning(f"{len(edge_set)} acyclic edges cannot span {n} vertices")
    degree = [0] * (n + 1)
    for u, v in edge_set:
        degree[u] += 1
        degree[v] += 1
    return SpanningTree(graph, frozenset(edge_set), tuple(degree))


def tree_from_edges(graph: Graph, edges: Iterable[Edge]) -> SpanningTree:
    """Wrap an edge set already known to form a spanning tree (no cycle check)."""
    edge_set = frozenset(norm(u, v) for u, v in edges)
    degree = [0] * (graph.n + 1)
    for u, v in edge_set:
        degree[u] += 1
        degree[v] += 1
    return SpanningTree(graph, edge_set, tuple(degree))


def classify(tree: SpanningTree) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Return (leaves, degree-2 internal, branchpoints)."""
    assert_leaf_identity(tree)
    return tree.leaves, tree.i2, tree.i3


def assert_leaf_identity(tree: SpanningTree) -> None:
    if tree.n < 2:
        return
    lhs = len(tree.leaves) - 2
    rhs = sum(tree.degree[v] - 2 for v in tree.i3)
    if lhs != rhs:
        raise InvariantViolation(f"leaf identity broken: |L|-2={lhs}, excess={rhs}")


def tree_path(tree: SpanningTree, u: int, v: int) -> list[int]:
    n = tree.n
    for x in (u, v):
        if not 1 <= x <= n:
            raise UnknownVertex(f"vertex {x} not in 1..{n}")
    if u == v:
        return [u]
    adj = tree.adj
    prev = [0] * (n + 1)
    prev[u] = u
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in adj[x]:
            if not prev[y]:
                prev[y] = x
                queue.append(y)
    path = [v]
    while path[-1] != u:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def bfs_tree(graph: Graph, root: int = 1) -> SpanningTree:
    seen = bytearray(graph.n + 1)
    seen[root] = 1
    edges = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in graph.adj[u]:
            if not seen[w]:
                seen[w] = 1
                edges.append((u, w))
                queue.append(w)
    return tree_from_edges(graph, edges)


def dfs_tree(graph: Graph, root: int = 1) -> SpanningTree:
    """Depth-first-search tree (non-tree edges join ancestor/descendant pairs)."""
    seen = bytearray(graph.n + 1)
    seen[root] = 1
    edges = []
    stack = [(root, iter(graph.adj[root]))]
    while stack:
        u, it = stack[-1]
        for w in it:
            if not seen[w]:
                seen[w] = 1
                edges.append((u, w))
                stack.append((w, iter(graph.adj[w])))
                break
        else:
            stack.pop()
    return tree_from_edges(graph, edges)


# ---------------------------------------------------------------- file formats


def _ints(parts: list[str], lineno: int) -> list[int]:
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(parts)!r}") from None
    if any(x < 1 for x in vals):
        raise ParseError(f"line {lineno}: vertex ids must be positive")
    return vals


def parse_edgelist(text: str) -> Graph:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = _ints(parts, lineno)
        pairs.append((u, v))
    if not pairs:
        raise ParseError("edge list is empty")
    return Graph.from_labeled_edges(pairs)


def parse_dimacs(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(f"line {lineno}: expected 'p edge n m'")
            n, m = _ints(parts[2:], lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before 'p edge' header")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: expected 'e u v'")
            u, v = _ints(parts[1:], lineno)
            if u > n or v > n:
                raise ParseError(f"line {lineno}: vertex beyond n={n}")
            edges.append((u, v))
        else:
            raise ParseError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise ParseError("missing 'p edge n m' header")
    if len(edges) != m:
        raise ParseError(f"header promises {m} edges, found {len(edges)}")
    return Graph(n, edges)


def parse_graph(text: str, format: str = "edgelist") -> Graph:
    if format == "edgelist":
        return parse_edgelist(text)
    if format == "dimacs":
        return parse_dimacs(text)
    raise ParseError(f"unknown format {format!r}")


def parse_labeled_edges(text: str) -> list[tuple[int, int]]:
    """Read an edge list of labels without building a graph (used for certificates)."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = _ints(parts, lineno)
        out.append((u, v))
    return out


def edges_from_labels(graph: Graph, pairs: Iterable[tuple[int, int]]) -> list[Edge]:
    index = {lab: i for i, lab in enumerate(graph.labels) if i}
    out = []
    for a, b in pairs:
        if a not in index or b not in index:
            raise UnknownVertex(f"label pair ({a}, {b}) names a vertex not in the graph")
        out.append((index[a], index[b]))
    return out
