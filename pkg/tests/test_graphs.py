import math
import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from k3frag import exact
from k3frag.encoding import parse_encoding
from k3frag.expected import ENCODINGS
from k3frag.graphs import (
    DynkinType,
    Multigraph,
    automorphism_orbits,
    canonical_form,
    dynkin_classify,
    girth,
    phi_taxonomy,
)

K4 = Multigraph(4, [(a, b, 1) for a in range(4) for b in range(a + 1, 4)])
K33 = Multigraph(6, [(a, b, 1) for a in range(3) for b in range(3, 6)])
PETERSEN = Multigraph(10, [(i, (i + 1) % 5, 1) for i in range(5)]
                      + [(5 + i, 5 + (i + 2) % 5, 1) for i in range(5)]
                      + [(i, i + 5, 1) for i in range(5)])


def cycle(n):
    return Multigraph(n, [(i, (i + 1) % n, 1) for i in range(n)])


def path(n):
    return Multigraph(n, [(i, i + 1, 1) for i in range(n - 1)])


def brute_aut(g):
    return sum(1 for p in permutations(range(g.n))
               if all(g.mult(p[u], p[v]) == m for u, v, m in g.edges()))


@pytest.mark.parametrize("g,order", [(K4, 24), (K33, 72), (PETERSEN, 120)])
def test_aut_orders(g, order):
    assert canonical_form(g).aut_order == order


def test_girth():
    assert girth(parse_encoding(ENCODINGS[6][0])) == 3
    assert girth(parse_encoding(ENCODINGS[28][0])) == 7
    assert girth(path(5)) == math.inf
    assert girth(Multigraph(2, [(0, 1, 2)])) == 2


def test_dynkin_examples():
    t, kappa = dynkin_classify(cycle(3))
    assert t == DynkinType("A", 2, True) and kappa == {0: 1, 1: 1, 2: 1}
    t, kappa = dynkin_classify(path(4))
    assert t == DynkinType("A", 4, False) and kappa is None
    t, kappa = dynkin_classify(cycle(4))
    assert t == DynkinType("A", 3, True) and set(kappa.values()) == {1}
    d5 = Multigraph(6, [(0, 2, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (3, 5, 1)])
    t, kappa = dynkin_classify(d5)
    assert t == DynkinType("D", 5, True)
    assert [kappa[v] for v in range(6)] == [1, 1, 2, 2, 1, 1]
    assert dynkin_classify(K4) == (None, None)


def _random_connected(rng, n, p):
    while True:
        edges = [(a, b, 1) for a, b in combinations(range(n), 2) if rng.random() < p]
        g = Multigraph(n, edges)
        if g.is_connected():
            return g


def test_dynkin_agrees_with_inertia():
    rng = random.Random(3)
    for _ in range(400):
        g = _random_connected(rng, rng.randint(1, 8), rng.choice((0.25, 0.35, 0.5)))
        t, kappa = dynkin_classify(g)
        pos, neg, zero = exact.inertia([[-x for x in r] for r in g.gram()])
        # with norm -2 on vertices the negated Gram is the Cartan matrix
        if t is None:
            assert not (neg == 0 and zero <= 1 and pos == g.n - zero)
        elif t.affine:
            assert (neg, zero) == (0, 1)
            gram = g.gram()
            assert all(sum(gram[v][u] * kappa[u] for u in kappa) == 0 for v in range(g.n))
        else:
            assert (neg, zero) == (0, 0)


def test_phi_taxonomy_examples():
    prism = parse_encoding(ENCODINGS[6][0])
    tax = phi_taxonomy(prism)
    assert tax.phi_type == DynkinType("A", 2, True)
    secs = list(tax.sections)
    assert len(secs) == 3 and all(prism.mult(a, b) for a, b in combinations(secs, 2))
    h1 = parse_encoding(ENCODINGS[8][0])
    tax = phi_taxonomy(h1)
    assert tax.phi_type == DynkinType("A", 2, True)
    assert len(tax.sections) == 3
    assert sorted(str(t) for t, _ in tax.fibers) == ["A1", "A1"]
    tax = phi_taxonomy(K33)
    assert tax.phi_type == DynkinType("A", 3, True)
    assert sorted(tax.sections.values()) == [2, 2]


GRAPHS = [K4, K33, PETERSEN] + [parse_encoding(t) for d in (8, 14, 28) for t in ENCODINGS[d]]


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: f"n{g.n}e{g.num_edges}")
def test_canonical_key_invariant(g):
    rng = random.Random(g.n)
    key = canonical_form(g).certificate
    for _ in range(100):
        p = list(range(g.n))
        rng.shuffle(p)
        assert canonical_form(g.relabel(p)).certificate == key


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(1, 2)), max_size=12),
    st.permutations(list(range(n))))))
def test_canonical_form_small_graphs(data):
    n, raw, perm = data
    adj = {}
    for a, b, m in raw:
        if a != b:
            adj[(min(a, b), max(a, b))] = m
    g = Multigraph(n, [(a, b, m) for (a, b), m in adj.items()])
    cf = canonical_form(g)
    assert canonical_form(g.relabel(perm)).certificate == cf.certificate
    assert cf.aut_order == brute_aut(g)
    assert math.factorial(n) % cf.aut_order == 0


def test_orbits_of_cube():
    from k3frag.structure import cubic_graph
    from k3frag.expected import CUBE_EDGES
    assert automorphism_orbits(cubic_graph(CUBE_EDGES)) == [list(range(8))]
