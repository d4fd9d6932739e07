from collections import Counter

import pytest

from k3frag.expected import CENSUS, CONFIGURATIONS, CUBE_EDGES, H_CONFIGS, MAX_COUNT
from k3frag.fano import NotHyperbolic, fano_graph, fano_lattice, h_part
from k3frag.graphs import is_isomorphic
from k3frag.lattice import PolarizedLattice, embeds_in_k3, is_m_admissible
from k3frag.records import load_checkpoint
from k3frag.search import (
    SearchConfig, attachments, catalogue, gluings, meeting_filter, search, state_from_graph,
)
from k3frag.structure import cubic_graph, multiplicities


@pytest.fixture(scope="module")
def deg18():
    return search(SearchConfig(degree=18))


def test_degree_18(deg18):
    assert deg18.complete
    assert len(deg18.hconfigs) == H_CONFIGS[18]
    assert deg18.max_count == MAX_COUNT[18]
    assert Counter(h.census for h in deg18.hconfigs) == Counter(CENSUS[18])
    per = dict(zip(CENSUS[18], CONFIGURATIONS[18]))
    assert {h.census: len(h.configurations) for h in deg18.hconfigs} == per


def test_witnesses_realise_configurations(deg18):
    for h in deg18.hconfigs:
        lat = PolarizedLattice(h.witness_gram, h.witness_h)
        assert is_m_admissible(lat, 2) and embeds_in_k3(lat) == "yes"
        g, _ = fano_graph(lat)
        verts, _ = h_part(g, 18)
        assert is_isomorphic(g.induced(verts), h.graph)
        assert sum(multiplicities(h.graph, 18)) == 18 * h.total


def test_degree_20_and_22():
    res = search(SearchConfig(degree=20))
    assert (len(res.hconfigs), res.max_count) == (3, 4)
    big = max(res.hconfigs, key=lambda h: h.total)
    assert big.census == (0, 0, 4) and big.graph.n == 25
    res = search(SearchConfig(degree=22))
    assert (len(res.hconfigs), res.max_count) == (1, 1)
    assert res.hconfigs[0].maximal


def test_budget_marks_incomplete():
    res = search(SearchConfig(degree=18, max_nodes=1))
    assert not res.complete
    assert all(not h.complete for h in res.hconfigs)


def test_workers_do_not_change_output(deg18):
    res = search(SearchConfig(degree=18, workers=2))
    assert res.complete
    assert sorted(h.key for h in res.hconfigs) == sorted(h.key for h in deg18.hconfigs)


def test_checkpoint_resume(tmp_path, deg18):
    path = str(tmp_path / "cp.records")
    part = search(SearchConfig(degree=18, max_nodes=3, checkpoint=path))
    assert not part.complete
    assert load_checkpoint(path).degree == 18
    rest = search(SearchConfig(degree=18, checkpoint=path), resume=path)
    assert rest.complete
    assert sorted(h.key for h in rest.hconfigs) == sorted(h.key for h in deg18.hconfigs)
    assert {h.key: len(h.configurations) for h in rest.hconfigs} == \
        {h.key: len(h.configurations) for h in deg18.hconfigs}


def test_resume_rejects_other_degree(tmp_path):
    path = str(tmp_path / "cp.records")
    search(SearchConfig(degree=22, max_nodes=1, checkpoint=path))
    with pytest.raises(ValueError):
        search(SearchConfig(degree=20), resume=path)


def test_bad_config():
    with pytest.raises(ValueError):
        SearchConfig(degree=7)
    with pytest.raises(ValueError):
        SearchConfig(degree=12, hash_min=0)


def _admissible(g, d):
    try:
        return is_m_admissible(fano_lattice(g, d).lattice, 2)
    except NotHyperbolic:
        return False


@pytest.mark.parametrize("d,t", [(6, 0), (8, 2)])
def test_meeting_filters_only_drop_inadmissible(d, t):
    cat = catalogue(d)
    h = cat.fragments[t].graph
    st = state_from_graph(h, cat, 18, 2)
    dropped = 0
    for glue in gluings(st, h, attachments(st, 2), rank_increase=False):
        if None not in glue.phi:
            continue  # the fragment glued onto itself
        if not meeting_filter(d, st, t, glue):
            dropped += 1
            assert not _admissible(glue.graph, d)
    assert dropped


def test_rank_increase_excludes_self_gluing():
    cat = catalogue(8)
    cube = cubic_graph(CUBE_EDGES)
    st = state_from_graph(cube, cat, 18, 2)
    for glue in gluings(st, cube, attachments(st, 2)):
        assert fano_lattice(glue.graph, 8).rank > st.rank
