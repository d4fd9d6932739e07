import pytest

from k3frag.graphs import Multigraph
from k3frag.oracle import cubic_graphs, oracle_fragments
from k3frag.search import catalogue

# connected cubic simple graphs on 4, 6, 8, 10 vertices
CUBIC_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19}


@pytest.mark.parametrize("n,count", sorted(CUBIC_COUNTS.items()))
def test_cubic_graph_counts(n, count):
    assert len(cubic_graphs(n)) == count


def test_odd_order_is_empty():
    assert cubic_graphs(5) == []


@pytest.mark.parametrize("d", [2, 4, 6, 8, 10])
def test_oracle_matches_catalogue(d):
    got = sorted(f.key for f in oracle_fragments(d))
    assert got == sorted(f.key for f in catalogue(d).fragments)
