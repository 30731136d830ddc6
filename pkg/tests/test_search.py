from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbow_subdiv.density import PreconditionError
from rainbow_subdiv.graph import ColouredGraph
from rainbow_subdiv.instances import gen_hypercube, gen_one_factorized_complete, gen_rainbow_complete
from rainbow_subdiv.ladder import practical_ladder
from rainbow_subdiv.search import (AvoidSet, ColourSplit, SplitError, _split_slack,
                                   check_edge_to_vertex, layer_growth_report, rainbow_connect,
                                   rainbow_reach, split_colours)

from _brute import rainbow_reachable
from _graphs import coloured, complete, random_graph


def test_reach_examples():
    q3 = gen_hypercube(3)
    r = rainbow_reach(q3, 0, None, 3)
    assert sorted(r.reached) == list(range(8))
    for ml in (1, 3, 7):
        r = rainbow_reach(q3, 0, AvoidSet(colours={0}), ml)
        assert 1 not in r
    r = rainbow_reach(q3, 0, None, 0)
    assert list(r.reached) == [0] and len(r.reached[0]) == 0


def test_reach_errors():
    q3 = gen_hypercube(3)
    with pytest.raises(ValueError):
        rainbow_reach(q3, 0, AvoidSet(vertices={0}), 2)
    with pytest.raises(ValueError):
        rainbow_reach(q3.full_view().induced([1, 2]), 0, None, 2)


@given(st.integers(0, 100_000), st.integers(2, 11), st.floats(0.2, 0.9), st.integers(0, 5), st.data())
@settings(max_examples=150, deadline=None)
def test_reach_witnesses_replay(seed, n, p, max_len, data):
    g = random_graph(seed, n, p)
    fv = data.draw(st.sets(st.integers(1, n - 1), max_size=3))
    fc = data.draw(st.sets(st.integers(0, max(g.k - 1, 0)), max_size=3))
    r = rainbow_reach(g, 0, AvoidSet(fv, fc), max_len)
    layers = list(r.layers)
    assert layers == sorted(layers) and layers[0] == 1 and layers[-1] == len(r)
    for v, path in r.reached.items():
        assert path.start == 0 and path.end == v
        assert path.is_rainbow() and path.is_simple() and path.replays_on(g)
        assert len(path) <= max_len
        assert not set(path.vertices) & fv and not set(path.colours) & fc
    # sound against unrestricted rainbow reachability
    assert set(r.reached) <= rainbow_reachable(g, 0, max_len, fv, fc)


def test_reach_on_rainbow_graph_is_plain_bfs():
    # with all colours distinct the fixed-witness rule never blocks anything
    g = gen_rainbow_complete(9)
    sub = g.full_view().with_edges(np.arange(g.m) % 3 != 0)
    r = rainbow_reach(sub, 0, None, 8)
    assert len(r) == 9


def test_layer_growth_report_fields():
    r = rainbow_reach(gen_hypercube(4), 0, None, 4)
    rep = layer_growth_report(r, 16, Fraction(1, 10), Fraction(1, 4))
    assert [x["before"] for x in rep] == [1, 5]
    assert all(x["meets_bound"] for x in rep)


def test_split_examples():
    for seed in range(5):
        s = split_colours(gen_rainbow_complete(20), seed)
        assert not s.relaxed
    one_colour = ColouredGraph(4, [(0, 1), (2, 3)], [0, 0])
    with pytest.raises(SplitError) as info:
        split_colours(one_colour, 0)
    assert info.value.best is not None and info.value.best.relaxed

    # two disjoint perfect matchings on 10 vertices
    m1 = [(2 * i, 2 * i + 1) for i in range(5)]
    m2 = [(2 * i + 1, (2 * i + 2) % 10) for i in range(5)]
    g = ColouredGraph(10, m1 + m2, [0] * 5 + [1] * 5)
    assert _split_slack(g.full_view(), np.array([1, 2], dtype=np.int8)) >= 1
    s = split_colours(g, 3)
    assert sorted(s.group.tolist()) == [1, 2]


def test_split_is_seeded():
    g = gen_one_factorized_complete(12)
    a, b = split_colours(g, 11), split_colours(g, 11)
    assert np.array_equal(a.group, b.group) and a.retries == b.retries
    assert isinstance(a, ColourSplit)
    for i in (1, 2):
        assert a.group_view(g.full_view(), i).n_edges > 0


def test_connect_on_one_factorized_k12():
    g = gen_one_factorized_complete(12)
    params = practical_ladder(12, 2, max_len=12)
    for x, y in [(0, 5), (3, 11), (7, 2)]:
        tr = rainbow_connect(g, x, y, None, params, seed=1)
        assert tr.ok, tr.reason
        p = tr.path
        assert (p.start, p.end) == (x, y)
        assert p.is_rainbow() and p.is_simple() and p.replays_on(g)
        assert len(p) <= params.path_len


def test_connect_respects_avoid_set():
    g = gen_rainbow_complete(16)
    params = practical_ladder(16, 2, max_len=12)
    avoid = AvoidSet({1, 2, 3}, {0, 1, 2, 3, 4})
    tr = rainbow_connect(g, 0, 9, avoid, params, seed=2)
    assert tr.ok
    assert not set(tr.path.vertices) & avoid.vertices
    assert not set(tr.path.colours) & avoid.colours
    assert max(tr.avoid_sizes) <= tr.avoid_bound


def test_connect_failure_stages():
    edge = ColouredGraph(2, [(0, 1)], [0])
    params = practical_ladder(2, 2, max_len=4)
    tr = rainbow_connect(edge, 0, 1, AvoidSet(colours={0}), params, seed=0)
    assert not tr.ok and tr.stage == "reach-x"
    with pytest.raises(ValueError):
        rainbow_connect(edge, 0, 0, None, params)
    with pytest.raises(ValueError):
        rainbow_connect(edge, 0, 1, AvoidSet(vertices={1}), params)

    q3 = gen_hypercube(3)
    tr = rainbow_connect(q3, 0, 1, AvoidSet(colours={0}), practical_ladder(8, 2, max_len=12), seed=1)
    assert not tr.ok and tr.stage in {"reach-x", "reach-y", "meet", "split"}
    assert tr.to_json()["stage"] == tr.stage

    # parity blocks every seed
    for seed in range(10):
        assert not rainbow_connect(q3, 0, 1, AvoidSet(colours={0}),
                                   practical_ladder(8, 2, max_len=12), seed=seed).ok


def test_connect_split_failure_is_reported():
    g = ColouredGraph(4, [(0, 1), (1, 2), (2, 3)], [0, 1, 0])
    params = practical_ladder(4, 2, max_len=8)
    stages = {rainbow_connect(g, 0, 3, None, params, seed=s).stage for s in range(4)}
    assert "split" in stages


def test_edge_to_vertex_examples():
    k10 = complete(10)
    assert check_edge_to_vertex(k10, k10, Fraction(1, 3))
    assert check_edge_to_vertex(k10, k10.full_view().induced(range(9)), Fraction(1, 5))
    # K6 plus a pendant vertex: delta = 1 < (32/7)/3
    lopsided = coloured(7, [(a, b) for a in range(6) for b in range(a + 1, 6)] + [(5, 6)])
    with pytest.raises(PreconditionError):
        check_edge_to_vertex(lopsided, lopsided, Fraction(1, 10))
