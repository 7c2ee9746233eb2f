import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from canon import C5, DOUBLESTAR, P4, STAR4, G
from istk.generators import generate, random_connected
from istk.graph import validate_spanning_tree
from istk.kernel import SCHEMA, baseline_kernel_3k, kernelize
from istk.oracle import opt_bruteforce


def test_kernelize_examples():
    out = kernelize(P4, 2)
    assert out.kind == "solved" and len(out.certificate.internal) == 2
    out = kernelize(STAR4, 2)
    assert (out.kind, out.decision, out.opt, out.reason) == ("answered", False, 1, "degenerate")
    out = kernelize(P4, 3)
    assert out.kind == "kernel" and out.kernel == P4 and out.k_prime == 3 and not out.trace
    assert kernelize(C5, 3).kind == "solved"


def test_baseline_examples():
    assert baseline_kernel_3k(C5, 3).kind == "solved"
    out = baseline_kernel_3k(STAR4, 2)
    assert (out.kind, out.decision, out.opt) == ("answered", False, 1)
    out = baseline_kernel_3k(P4, 3)
    assert out.kind == "kernel" and out.kernel.n == 4 <= 3 * 3 - 3


def test_small_graphs():
    tri = G([(1, 2), (2, 3), (1, 3)])
    assert kernelize(tri, 1).kind == "solved"
    out = kernelize(tri, 2)
    assert out.kind == "answered" and out.opt == 1 and out.reason == "small"
    assert kernelize(G([(1, 2)]), 0).kind == "solved"


def test_parameterless_run_reaches_half_internal():
    out = kernelize(generate("caterpillar:n=12,legs=3"))
    assert out.kind == "kernel"
    assert 2 * len(out.kernel_tree.internal) >= out.kernel.n
    assert len(out.trace) > 0 and out.k_prime is None


def test_json_schema():
    for g, k in ((P4, 2), (STAR4, 2), (P4, 3), (DOUBLESTAR, 2)):
        d = json.loads(json.dumps(kernelize(g, k).to_json()))
        assert d["schema"] == SCHEMA and d["variant"] in {"solved", "answered", "kernel"}


def test_offsets_add_up():
    g = generate("caterpillar:n=4,legs=2")
    opt = opt_bruteforce(g).opt
    for k in range(1, g.n - 1):
        out = kernelize(g, k)
        if out.kind == "kernel":
            assert opt_bruteforce(out.kernel).opt + out.offset == opt
        elif out.kind == "answered":
            assert out.opt == opt


@pytest.mark.parametrize("spec", ["gnp:n=400,m=420", "gnp:n=400,m=800", "caterpillar:n=60,legs=2", "doublestar:40,50"])
def test_kernel_bound_large(spec):
    g = generate(spec, 3)
    base = kernelize(g)
    ni = len(base.kernel_tree.internal) if base.kind == "kernel" else 1
    for k in (ni + 1, ni + 10, g.n // 2 + 1, g.n - 2):
        out = kernelize(g, k)
        if out.kind == "kernel":
            assert out.kernel.n <= 2 * out.k_prime - 2
        elif out.kind == "solved":
            assert len(validate_spanning_tree(g, out.certificate.edges).internal) >= k
        b = baseline_kernel_3k(g, k)
        if b.kind == "kernel":
            assert b.kernel.n <= 3 * b.k_prime - 3


@settings(max_examples=50, deadline=None)
@given(st.integers(4, 10), st.integers(0, 10**6))
def test_kernel_preserves_answer(n, seed):
    rng = random.Random(seed)
    g = random_connected(n, rng.randint(n - 1, min(n + 3, n * (n - 1) // 2)), rng)
    opt = opt_bruteforce(g).opt
    for k in range(1, n - 1):
        out = kernelize(g, k)
        if out.kind == "kernel":
            assert (opt_bruteforce(out.kernel).opt >= out.k_prime) == (opt >= k)
        elif out.kind == "answered":
            assert out.opt == opt
        else:
            assert opt >= k
