import pytest

from istk.errors import BadSpec
from istk.generators import connected_graphs, generate, parse_spec, random_corpus


def test_parse_spec_forms():
    assert parse_spec("gnp:n=10,m=12") == ("gnp", {"n": 10, "m": 12})
    assert parse_spec("doublestar:2,3") == ("doublestar", {"a": 2, "b": 3})
    assert parse_spec("caterpillar:4,legs=1") == ("caterpillar", {"n": 4, "legs": 1})


@pytest.mark.parametrize("spec", ["blob:3", "path", "path:x", "path:1,2", "gnp:n=5", "gnp:n=5,q=3", "cycle:2",
                                  "gnp:n=5,m=3", "gnp:n=5,m=11", "star:0"])
def test_bad_specs(spec):
    with pytest.raises(BadSpec):
        generate(spec)


@pytest.mark.parametrize(
    "spec,n,m",
    [("path:5", 5, 4), ("cycle:5", 5, 5), ("star:6", 6, 5), ("complete:5", 5, 10),
     ("doublestar:2,3", 7, 6), ("caterpillar:3,2", 9, 8), ("gnp:n=50,m=70", 50, 70), ("gnp:n=8,m=28", 8, 28)],
)
def test_sizes(spec, n, m):
    g = generate(spec, 1)
    assert (g.n, g.m) == (n, m) and g.is_connected()


def test_seed_determinism():
    assert generate("gnp:n=30,m=60", 4) == generate("gnp:n=30,m=60", 4)
    assert generate("gnp:n=30,m=60", 4) != generate("gnp:n=30,m=60", 5)


def test_exhaustive_counts():
    # connected graphs up to isomorphism
    assert [len(connected_graphs(n)) for n in range(1, 9)] == [1, 1, 2, 6, 21, 112, 853, 11117]


def test_corpus_graphs_distinct_and_connected():
    g8 = connected_graphs(8)
    assert len({g.sorted_edges().__str__() for g in g8}) == len(g8)
    assert all(g.is_connected() and g.n == 8 for g in g8[:500])
    gs = list(random_corpus(50, 10, 1))
    assert all(4 <= g.n <= 10 and g.is_connected() for g in gs)
    assert gs == list(random_corpus(50, 10, 1))
