"""Graph generators for the CLI and the test corpora.

Spec strings look like ``path:4``, ``star:5``, ``doublestar:2,3``,
``caterpillar:n=6,legs=2`` or ``gnp:n=200,m=600``. ``gnp`` draws a uniformly
random labelled tree (Prüfer decoding) and adds ``m - (n - 1)`` distinct random
edges, so the result is always connected.
"""

from __future__ import annotations

import random
from functools import lru_cache
from importlib import resources
from typing import Iterator

import networkx as nx

from istk.errors import BadSpec
from istk.graph import Graph

_PARAMS = {
    "path": ("n",),
    "cycle": ("n",),
    "star": ("n",),
    "complete": ("n",),
    "doublestar": ("a", "b"),
    "caterpillar": ("n", "legs"),
    "gnp": ("n", "m"),
}


def parse_spec(spec: str) -> tuple[str, dict[str, int]]:
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind not in _PARAMS:
        raise BadSpec(f"unknown generator {kind!r}; choose from {', '.join(sorted(_PARAMS))}")
    names = _PARAMS[kind]
    args: dict[str, int] = {}
    parts = [p for p in rest.split(",") if p.strip()] if rest else []
    for i, part in enumerate(parts):
        key, eq, val = part.partition("=")
        if not eq:
            if i >= len(names):
                raise BadSpec(f"too many arguments in {spec!r}")
            key, val = names[i], part
        key = key.strip()
        if key not in names:
            raise BadSpec(f"{kind} takes {', '.join(names)}, not {key!r}")
        try:
            args[key] = int(val)
        except ValueError:
            raise BadSpec(f"{key}={val!r} is not an integer") from None
    missing = [k for k in names if k not in args]
    if missing:
        raise BadSpec(f"{spec!r} is missing {', '.join(missing)}")
    return kind, args


def generate(spec: str, seed: int = 0) -> Graph:
    kind, a = parse_spec(spec)
    if kind == "gnp":
        return random_connected(a["n"], a["m"], random.Random(seed))
    n = a.get("n", 0)
    if kind in ("path", "cycle", "star", "complete") and n < 1:
        raise BadSpec("n must be positive")
    if kind == "path":
        if n == 1:
            return Graph(1, [])
        return Graph(n, [(i, i + 1) for i in range(1, n)])
    if kind == "cycle":
        if n < 3:
            raise BadSpec("a cycle needs n >= 3")
        return Graph(n, [(i, i % n + 1) for i in range(1, n + 1)])
    if kind == "star":
        if n == 1:
            return Graph(1, [])
        return Graph(n, [(1, i) for i in range(2, n + 1)])
    if kind == "complete":
        return Graph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])
    if kind == "doublestar":
        if a["a"] < 0 or a["b"] < 0:
            raise BadSpec("leaf counts must be non-negative")
        edges = [(1, 2)]
        nxt = 3
        for centre, count in ((1, a["a"]), (2, a["b"])):
            for _ in range(count):
                edges.append((centre, nxt))
                nxt += 1
        return Graph(nxt - 1, edges)
    # caterpillar: spine 1..n, each spine vertex gets `legs` pendants
    if n < 1 or a["legs"] < 0:
        raise BadSpec("caterpillar needs n >= 1 and legs >= 0")
    edges = [(i, i + 1) for i in range(1, n)]
    nxt = n + 1
    for i in range(1, n + 1):
        for _ in range(a["legs"]):
            edges.append((i, nxt))
            nxt += 1
    return Graph(nxt - 1, edges)


def random_connected(n: int, m: int, rng: random.Random) -> Graph:
    if n < 1:
        raise BadSpec("n must be positive")
    most = n * (n - 1) // 2
    if not n - 1 <= m <= most:
        raise BadSpec(f"m={m} must lie in [{n - 1}, {most}] for n={n}")
    if n == 1:
        return Graph(1, [])
    if n == 2:
        return Graph(2, [(1, 2)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    tree = nx.from_prufer_sequence(seq)
    edges = {(min(u, v) + 1, max(u, v) + 1) for u, v in tree.edges()}
    extra = m - (n - 1)
    if extra > (most - (n - 1)) // 2:
        pool = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if (i, j) not in edges]
        edges.update(rng.sample(pool, extra))
    else:
        while len(edges) < m:
            i, j = rng.randrange(1, n + 1), rng.randrange(1, n + 1)
            if i != j:
                edges.add((min(i, j), max(i, j)))
    return Graph(n, sorted(edges))


def from_networkx(g: nx.Graph) -> Graph:
    nodes = sorted(g.nodes())
    index = {v: i for i, v in enumerate(nodes, start=1)}
    return Graph(len(nodes), [(index[u], index[v]) for u, v in g.edges()])


@lru_cache(maxsize=None)
def _small(n: int) -> tuple[Graph, ...]:
    if n <= 7:
        return tuple(
            from_networkx(g)
            for g in nx.graph_atlas_g()
            if g.number_of_nodes() == n and n > 0 and nx.is_connected(g)
        )
    if n == 8:
        text = resources.files("istk.data").joinpath("connected8.g6").read_text()
        return tuple(from_networkx(nx.from_graph6_bytes(line.encode())) for line in text.split())
    raise ValueError("exhaustive corpus is available for n <= 8 only")


def connected_graphs(n: int) -> tuple[Graph, ...]:
    """All connected graphs on ``n <= 8`` vertices, one per isomorphism class."""
    return _small(n)


def random_corpus(count: int, n_max: int, seed: int, n_min: int = 4) -> Iterator[Graph]:
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        most = n * (n - 1) // 2
        # half the draws are near-trees, where reductions actually fire
        m = rng.randint(n - 1, min(n + 2, most)) if rng.random() < 0.5 else rng.randint(n - 1, most)
        yield random_connected(n, m, rng)


def regenerate_connected8() -> list[str]:
    """Rebuild the packaged 8-vertex corpus (graph6 lines); takes about a minute."""
    import itertools

    buckets: dict[tuple, list[nx.Graph]] = {}
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() != 7 or not nx.is_connected(g):
            continue
        for r in range(1, 8):
            for sub in itertools.combinations(range(7), r):
                h = g.copy()
                h.add_edges_from((7, x) for x in sub)
                key = (
                    h.number_of_edges(),
                    tuple(sorted(d for _, d in h.degree())),
                    nx.weisfeiler_lehman_graph_hash(h, iterations=3),
                )
                seen = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h, o) for o in seen):
                    seen.append(h)
    return sorted(
        nx.to_graph6_bytes(h, header=False).decode().strip() for group in buckets.values() for h in group
    )
