"""Acceptance criteria 1-8; each test prints one PASS/FAIL line."""

import random
import time

import pytest

from istk import generate, kernelize
from istk.generators import random_connected
from istk.graph import Graph
from istk.selftest import Report, check_large, run_selftest

SEEDS = (0, 1, 2)


def leafy(core: int, pendants: int, extra: int, seed: int) -> Graph:
    """Random core with many pendant vertices, a few of them wired back into the core."""
    rng = random.Random(seed)
    base = random_connected(core, min(2 * core, core * (core - 1) // 2), rng)
    edges = set(base.edges)
    n = core + pendants
    for v in range(core + 1, n + 1):
        edges.add((rng.randint(1, core), v))
    while extra:
        u, v = rng.randint(1, core), rng.randint(core + 1, n)
        if (u, v) not in edges:
            edges.add((u, v))
            extra -= 1
    return Graph(n, sorted(edges))


def _ks(g: Graph) -> list:
    out = kernelize(g, None)
    ni = len(out.certificate.internal) if out.certificate is not None else g.n // 3
    return [None, ni + 1, (ni + g.n) // 2, max(g.n - 2, 1)]


@pytest.fixture(scope="module")
def small():
    t = time.perf_counter()
    report = run_selftest()
    return report, time.perf_counter() - t


@pytest.fixture(scope="module")
def large():
    report = Report()
    t = time.perf_counter()
    for n in (50, 200, 500, 1000, 2000):
        for m in (n, n + n // 10, 3 * n // 2, 3 * n):
            g = generate(f"gnp:n={n},m={m}", n + m)
            check_large(g, _ks(g), report)
    for core, pend, extra in ((10, 20, 3), (20, 60, 10), (40, 120, 20), (80, 220, 30)):
        for seed in SEEDS:
            g = leafy(core, pend, extra, seed)
            check_large(g, _ks(g), report)
    report.seconds = time.perf_counter() - t
    return report


def _verdict(capsys, label: str, ok: bool, detail: str, *reports_and_keys) -> None:
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {label}: {detail}")
    if not ok:
        msgs = [f"{k}: {r.failures[k][:3]}" for r, keys in reports_and_keys for k in keys if r.failures[k]]
        pytest.fail("; ".join(msgs))


def _count(reports_and_keys) -> int:
    return sum(r.checked[k] for r, keys in reports_and_keys for k in keys)


def _judge(capsys, label, text, *reports_and_keys):
    ok = all(r.passed(*keys, "unexpected_errors") for r, keys in reports_and_keys)
    _verdict(capsys, label, ok, f"{text} ({_count(reports_and_keys)} checks)", *[(r, (*keys, "unexpected_errors")) for r, keys in reports_and_keys])


def test_criterion_1_oracle_equivalence(small, capsys):
    report, _ = small
    assert report.graphs >= 11117 + 500
    _judge(capsys, "1", "decision agrees with exhaustive optimum, n 4..8 all connected + 500 random n<=10",
           (report, ("oracle_equivalence", "local_search_below_opt")))


def test_criterion_2_kernel_bound(small, large, capsys):
    assert large.checked["kernel_bound"] > 0
    _judge(capsys, "2", "kernel has at most 2k'-2 vertices", (small[0], ("kernel_bound",)), (large, ("kernel_bound",)))


def test_criterion_3_dichotomy(small, large, capsys):
    _judge(capsys, "3", "maximal tree half internal or |L'| >= 2|N(L')|", (small[0], ("dichotomy",)), (large, ("dichotomy",)))


def test_criterion_4_exchange_progress(small, large, capsys):
    _judge(capsys, "4", "each exchange gains >= 1, at most n-2 steps",
           (small[0], ("exchange_progress",)), (large, ("exchange_progress",)))


def test_criterion_5_reduction_exactness(small, capsys):
    assert small[0].checked["reduction_exactness"] > 0
    _judge(capsys, "5", "opt drops by exactly 2|S|-2; degenerate opt = 2|S|-1", (small[0], ("reduction_exactness",)))


def test_criterion_6_counting_chain(small, large, capsys):
    assert large.checked["counting_chain"] > 0
    _judge(capsys, "6", "size inequalities hold on every extraction",
           (small[0], ("counting_chain",)), (large, ("counting_chain",)))


def test_criterion_7_lifting(small, large, capsys):
    _judge(capsys, "7", "every YES certificate verifies on the input graph", (small[0], ("lifting",)), (large, ("lifting",)))


def test_criterion_8_runtime(small, capsys):
    worst = 0.0
    for seed in SEEDS:
        g = generate("gnp:n=2000,m=6000", seed)
        t = time.perf_counter()
        kernelize(g, g.n // 2)
        kernelize(g, None)
        worst = max(worst, time.perf_counter() - t)
    selftest_s = small[1]
    ok = worst < 10 and selftest_s < 300
    _verdict(capsys, "8", ok, f"gnp n=2000 m=6000 worst {worst:.2f}s (< 10s); selftest {selftest_s:.1f}s (< 300s)")
