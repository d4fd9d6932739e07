import pytest

from k3frag.encoding import EncodingError, parse_encoding, print_encoding
from k3frag.expected import (
    CUBE_EDGES, CUBE_PERFECT, ENCODINGS, GRAPHS, PRISM_EDGES, PRISM_PERFECT, PUBLISHED_LATEX, TRIPLES,
)
from k3frag.fano import fano_lattice, find_fragments, h_part, saturate
from k3frag.fragments import HFragment, is_fragment
from k3frag.graphs import Multigraph, is_isomorphic
from k3frag.search import catalogue
from k3frag.structure import cubic_graph, perfect_subgraphs

K4 = Multigraph(4, [(a, b, 1) for a in range(4) for b in range(a + 1, 4)])


@pytest.mark.parametrize("d", [2, 4, 6, 8, 10, 12])
def test_catalogue_small_degrees(d):
    cat = catalogue(d)
    assert len(cat) == GRAPHS[d]
    assert [f.triple for f in cat.fragments] == TRIPLES[d]
    for f in cat.fragments:
        assert f.graph.n == d and f.graph.is_regular(3)


@pytest.mark.parametrize("g,d,r", [
    (K4, 4, 4),
    (parse_encoding(ENCODINGS[6][0]), 6, 6),
    (parse_encoding(ENCODINGS[24][0]), 24, 18),
])
def test_fano_rank(g, d, r):
    assert fano_lattice(g, d).rank == r


def test_parse_examples():
    prism = parse_encoding("AA[2](1;2;3) (1x2)(1x3)(2x3)")
    assert is_isomorphic(prism, cubic_graph(PRISM_EDGES, one_based=True))
    h8 = parse_encoding("AA[5](1;2;3;4;5;6) A[1](1,3,5) A[1](2,4,6) (1x4)(2x5)(3x6)")
    assert HFragment(h8, 14).triple == TRIPLES[14][7]
    l28 = parse_encoding(PUBLISHED_LATEX[28][0])
    assert l28.n == 28 and l28.canonical.aut_order == 336


@pytest.mark.parametrize("text,where", [
    ("AA[2](1;2;3 (1x2)", (1, 11)),
    ("QQ[2](1)", (1, 1)),
])
def test_parse_syntax_errors(text, where):
    with pytest.raises(EncodingError) as e:
        parse_encoding(text)
    assert (e.value.line, e.value.column) == where


@pytest.mark.parametrize("text", [
    "AA[2](1;2;3) (1x2)(1x3)(2x4)",
    "AA[2](1;2;3) (1x2)(1x3)",
    "AA[2](1;2) (1x2)",
    "AA[2](1;2;3) (1x1)",
])
def test_parse_semantic_errors(text):
    with pytest.raises(EncodingError):
        parse_encoding(text)


@pytest.mark.parametrize("d", [2, 4, 6, 8, 10, 12])
def test_print_parse_round_trip(d):
    for f in catalogue(d).fragments:
        text = print_encoding(f.graph)
        back = parse_encoding(text)
        assert is_isomorphic(back, f.graph)
        assert print_encoding(back) == text
        rng_perm = list(reversed(range(f.graph.n)))
        assert print_encoding(f.graph.relabel(rng_perm)) == text


def _orbit_table(g, table):
    """Map each perfect set of ``table`` to the canonical orbit representative."""
    found = perfect_subgraphs(g)
    out = {}
    for delta, comp in table.items():
        reps = [r for r in found if _same_orbit(g, r, delta)]
        assert len(reps) == 1, delta
        out[reps[0]] = len(comp)
    return found, out


def _same_orbit(g, a, b):
    if len(a) != len(b):
        return False
    target = tuple(sorted(b))
    orbit = {tuple(sorted(a))}
    stack = list(orbit)
    while stack:
        s = stack.pop()
        for p in g.canonical.generators:
            t = tuple(sorted(p[v] for v in s))
            if t not in orbit:
                orbit.add(t)
                stack.append(t)
    return target in orbit


def test_perfect_subgraphs_cube():
    cube = cubic_graph(CUBE_EDGES)
    found, matched = _orbit_table(cube, CUBE_PERFECT)
    assert set(found) - set(matched) == {tuple(range(8))}
    for rep, size in matched.items():
        assert len(found[rep]) == size
    assert found[tuple(range(8))] == ()


def test_perfect_subgraphs_prism():
    prism = cubic_graph(PRISM_EDGES, one_based=True)
    found = perfect_subgraphs(prism)
    want = {tuple(v - 1 for v in d): tuple(v - 1 for v in c) for d, c in PRISM_PERFECT.items()}
    want[tuple(range(6))] = ()
    assert found == want


@pytest.mark.parametrize("d", [4, 6, 8, 10])
def test_missing_vertex_is_recovered(d):
    for f in catalogue(d).fragments:
        g = f.graph
        for v in range(g.n):
            rest = [u for u in range(g.n) if u != v]
            sat = saturate(fano_lattice(g.induced(rest), d))
            want = {i for i, u in enumerate(rest) if g.mult(u, v)}
            extra = range(len(rest), sat.graph.n)
            assert any({i for i in range(len(rest)) if sat.graph.mult(w, i)} == want for w in extra)


def test_saturation_idempotent_and_maximal():
    for d, k in ((6, 0), (8, 2), (22, 0)):
        g = catalogue(d).fragments[k].graph
        sat = saturate(fano_lattice(g, d))
        again = saturate(fano_lattice(sat.graph, d))
        assert again.graph.n == sat.graph.n
    h22 = catalogue(22).fragments[0].graph
    assert saturate(fano_lattice(h22, 22)).graph.n == 22


def test_find_fragments_and_h_part():
    assert find_fragments(Multigraph(0), 4) == []
    assert find_fragments(K4, 4) == [(0, 1, 2, 3)]
    verts, frags = h_part(K4, 4)
    assert set(verts) >= {0, 1, 2, 3} and frags
    assert h_part(Multigraph(3, [(0, 1, 1)]), 4)[1] == []


def test_is_fragment_rejects():
    assert not is_fragment(K4, 6)
    petersen = Multigraph(10, [(i, (i + 1) % 5, 1) for i in range(5)]
                          + [(5 + i, 5 + (i + 2) % 5, 1) for i in range(5)]
                          + [(i, i + 5, 1) for i in range(5)])
    assert is_fragment(petersen, 10)
