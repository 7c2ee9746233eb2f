import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from canon import C5, DOUBLESTAR, K3, K4, P4, STAR4, G
from istk.errors import TooLarge
from istk.generators import random_connected
from istk.graph import Graph, validate_spanning_tree
from istk.oracle import DEFAULT_CAP, default_cap, opt_bruteforce, solve_decision, verify_certificate


@pytest.mark.parametrize("g,want", [(P4, 2), (K3, 1), (STAR4, 1), (C5, 3), (K4, 2), (DOUBLESTAR, 2)])
def test_opt_examples(g, want):
    res = opt_bruteforce(g)
    assert res.opt == want
    assert len(validate_spanning_tree(g, res.witness.edges).internal) == want


def test_trivial_orders():
    assert opt_bruteforce(Graph(1, [])).opt == 0
    assert opt_bruteforce(G([(1, 2)])).opt == 0


def _nx_opt(g):
    h = nx.Graph(list(g.edges))
    return max(
        sum(1 for _, d in t.degree() if d >= 2)
        for t in nx.algorithms.tree.mst.SpanningTreeIterator(h)
    )


@pytest.mark.parametrize("seed", range(40))
def test_against_spanning_tree_enumeration(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    m = rng.randint(n - 1, min(n * (n - 1) // 2, n + 5))
    g = random_connected(n, m, rng)
    assert opt_bruteforce(g).opt == _nx_opt(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 9), st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_relabel_invariance(n, seed, rnd):
    rng = random.Random(seed)
    g = random_connected(n, rng.randint(n - 1, n * (n - 1) // 2), rng)
    perm = list(range(1, n + 1))
    rnd.shuffle(perm)
    h = Graph(n, [(perm[u - 1], perm[v - 1]) for u, v in g.edges])
    assert opt_bruteforce(g).opt == opt_bruteforce(h).opt


def test_cap(monkeypatch):
    big = Graph(17, [(i, i + 1) for i in range(1, 17)])
    assert default_cap() == DEFAULT_CAP
    with pytest.raises(TooLarge):
        opt_bruteforce(big)
    assert opt_bruteforce(big, cap=17).opt == 15
    monkeypatch.setenv("ISTK_CAP", "3")
    with pytest.raises(TooLarge):
        opt_bruteforce(P4)


def test_solve_decision_examples():
    d = solve_decision(K4, 2)
    assert d.answer and d.certificate.is_path() and len(d.certificate.internal) == 2
    assert not solve_decision(STAR4, 2).answer
    d = solve_decision(P4, 3)
    assert not d.answer and d.opt == 2


def test_solve_decision_lifts_through_reductions():
    # many pendant pairs force reductions before the oracle runs on the kernel
    g = G([(1, 2), (2, 3), (3, 4), (1, 5), (1, 6), (2, 7), (2, 8), (3, 9), (3, 10), (4, 11), (4, 12)])
    want = opt_bruteforce(g).opt
    for k in range(1, g.n - 1):
        d = solve_decision(g, k)
        assert d.answer == (want >= k)
        if d.answer:
            assert verify_certificate(g, d.certificate.edges, k).accepted


def test_verify_examples():
    assert verify_certificate(P4, [(1, 2), (2, 3), (3, 4)], 2).accepted
    v = verify_certificate(STAR4, [(1, 2), (1, 3), (1, 4)], 2)
    assert not v.accepted and v.internal == 1
    assert not verify_certificate(P4, [(1, 2), (2, 3), (1, 4)], 1).accepted
    assert not verify_certificate(K3, [(1, 2), (2, 3), (1, 3)], 1).accepted
