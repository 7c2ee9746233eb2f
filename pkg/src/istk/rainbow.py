"""Rainbow spanning trees: spanning trees whose edges carry pairwise distinct colours.

Found by cardinality matroid intersection of the graphic matroid with the
partition matroid "at most one edge per colour" (shortest augmenting paths in
the exchange graph).
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

ColoredEdge = tuple[int, int, int]  # (colour, a, b)


def _components(n: int, edges: list[ColoredEdge], chosen: list[int]) -> tuple[list[int], list[list[tuple[int, int]]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in chosen:
        _, a, b = edges[i]
        adj[a].append((b, i))
        adj[b].append((a, i))
    comp = [-1] * n
    for s in range(n):
        if comp[s] != -1:
            continue
        comp[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if comp[y] == -1:
                    comp[y] = s
                    stack.append(y)
    return comp, adj


def _cycle(adj: list[list[tuple[int, int]]], a: int, b: int) -> list[int]:
    """Edge ids on the forest path from a to b."""
    prev: dict[int, tuple[int, int]] = {a: (-1, -1)}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y, i in adj[x]:
            if y not in prev:
                prev[y] = (x, i)
                queue.append(y)
    out = []
    x = b
    while x != a:
        x, i = prev[x]
        out.append(i)
    return out


def rainbow_spanning_tree(n: int, edges: Sequence[ColoredEdge]) -> list[int] | None:
    """Indices of ``n - 1`` edges forming a rainbow spanning tree of nodes ``0..n-1``, or None."""
    edges = list(edges)
    if n <= 1:
        return []
    chosen: list[int] = []
    in_set = [False] * len(edges)
    used: dict[int, int] = {}
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (c, a, b) in enumerate(edges):
        if c in used:
            continue
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            used[c] = i
            chosen.append(i)
            in_set[i] = True

    while len(chosen) < n - 1:
        comp, adj = _components(n, edges, chosen)
        sources = []
        cycles: dict[int, list[int]] = {}
        for i, (c, a, b) in enumerate(edges):
            if in_set[i]:
                continue
            if comp[a] != comp[b]:
                sources.append(i)
            else:
                cycles[i] = _cycle(adj, a, b)
        # arcs y -> x (y in set, x not): swapping keeps a forest
        graphic_out: dict[int, list[int]] = {}
        for x, cyc in cycles.items():
            for y in cyc:
                graphic_out.setdefault(y, []).append(x)
        prev: dict[int, int] = {x: -1 for x in sources}
        queue = deque(sources)
        end = -1
        while queue:
            z = queue.popleft()
            if in_set[z]:
                nxt = graphic_out.get(z, ())
            else:
                c = edges[z][0]
                if c not in used:
                    end = z
                    break
                # arc x -> y: colour of x is freed by dropping y
                nxt = (used[c],)
            for w in nxt:
                if w not in prev:
                    prev[w] = z
                    queue.append(w)
        if end == -1:
            return None
        z = end
        while z != -1:
            c = edges[z][0]
            if in_set[z]:
                in_set[z] = False
                if used.get(c) == z:
                    del used[c]
            else:
                in_set[z] = True
                used[c] = z
            z = prev[z]
        chosen = [i for i in range(len(edges)) if in_set[i]]
    return sorted(chosen)
