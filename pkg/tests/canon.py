"""Named small graphs shared across the test modules."""

from istk.graph import Graph, validate_spanning_tree


def G(edges):
    return Graph(max(max(e) for e in edges), edges)


def T(graph, edges):
    return validate_spanning_tree(graph, edges)


P4 = G([(1, 2), (2, 3), (3, 4)])
K3 = G([(1, 2), (1, 3), (2, 3)])
K4 = G([(a, b) for a in range(1, 5) for b in range(a + 1, 5)])
C5 = G([(i, i % 5 + 1) for i in range(1, 6)])
STAR4 = G([(1, 2), (1, 3), (1, 4)])
STAR5 = G([(1, i) for i in range(2, 6)])
STARX = G([(1, 2), (1, 3), (1, 4), (2, 3)])
DOUBLESTAR = G([(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
RULE2A_TREE = [(1, 2), (2, 3), (3, 6), (3, 4), (4, 5)]
RULE2A = G(RULE2A_TREE + [(5, 2)])
DBGRAPH_TREE = [(1, 2), (2, 3), (2, 4), (4, 5), (5, 6), (6, 7)]
DBGRAPH = G(DBGRAPH_TREE + [(1, 5), (1, 6)])
# a hub joined to three centres, each centre with two private pendants
SPIDER = G([(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (3, 8), (4, 9), (4, 10)])

ALL = {
    "P4": P4, "K3": K3, "K4": K4, "C5": C5, "STAR4": STAR4, "STAR5": STAR5, "STARX": STARX,
    "DOUBLESTAR": DOUBLESTAR, "RULE2A": RULE2A, "DBGRAPH": DBGRAPH, "SPIDER": SPIDER,
}
