from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbow_subdiv.certificates import RainbowPath, SubdivisionCertificate, shortcut_walk
from rainbow_subdiv.graph import ColouredGraph
from rainbow_subdiv.instances import gen_hypercube, gen_rainbow_complete
from rainbow_subdiv.oracle import (ExhaustiveCapError, SubsetTable, brute_d_minimal_check,
                                   brute_rainbow_cycle, brute_rainbow_paths,
                                   touching_edge_deficits, verify_subdivision)

import _brute
from _graphs import complete, random_graph


def k4_cert():
    # K4 subdivision on the rainbow K6 using direct edges only
    g = gen_rainbow_complete(6)
    branch = (0, 1, 2, 3)
    paths = {}
    for i in range(4):
        for j in range(i + 1, 4):
            a, b = branch[i], branch[j]
            paths[(i, j)] = RainbowPath((a, b), (g.colour_of(a, b),))
    return g, SubdivisionCertificate(branch, paths)


def test_verify_accepts_valid():
    g, cert = k4_cert()
    v = verify_subdivision(g, cert, 4, 1)
    assert v.accepted and bool(v)


def test_verify_names_each_violation():
    g, cert = k4_cert()
    assert "expected 3" in verify_subdivision(g, cert, 3).reason
    bad = SubdivisionCertificate((0, 1, 2, 2), cert.paths)
    assert "repeated branch" in verify_subdivision(g, bad, 4).reason
    bad = SubdivisionCertificate((0, 1, 2, 9), cert.paths)
    assert "out of range" in verify_subdivision(g, bad, 4).reason
    paths = dict(cert.paths)
    del paths[(1, 2)]
    assert "missing pair" in verify_subdivision(g, SubdivisionCertificate(cert.branch, paths), 4).reason

    # route (0, 1) through 4 and (2, 3) through 4 as well: shared interior
    paths = dict(cert.paths)
    paths[(0, 1)] = RainbowPath((0, 4, 1), (g.colour_of(0, 4), g.colour_of(4, 1)))
    assert verify_subdivision(g, SubdivisionCertificate(cert.branch, paths), 4).accepted
    assert "exceeds" in verify_subdivision(g, SubdivisionCertificate(cert.branch, paths), 4, 1).reason
    paths[(2, 3)] = RainbowPath((2, 4, 3), (g.colour_of(2, 4), g.colour_of(4, 3)))
    assert "shared" in verify_subdivision(g, SubdivisionCertificate(cert.branch, paths), 4).reason

    paths = dict(cert.paths)
    paths[(0, 1)] = RainbowPath((0, 2, 1), (g.colour_of(0, 2), g.colour_of(2, 1)))
    r = verify_subdivision(g, SubdivisionCertificate(cert.branch, paths), 4).reason
    assert "branch vertex" in r or "repeated colour" in r

    paths = dict(cert.paths)
    paths[(0, 1)] = RainbowPath((0, 1), (g.colour_of(0, 2),))
    assert "has colour" in verify_subdivision(g, SubdivisionCertificate(cert.branch, paths), 4).reason
    paths[(0, 1)] = RainbowPath((1, 0), (g.colour_of(0, 1),))
    assert "endpoints" in verify_subdivision(g, SubdivisionCertificate(cert.branch, paths), 4).reason


def test_verify_catches_repeated_colours_and_non_edges():
    q = gen_hypercube(3)
    branch = (0, 3)
    p = RainbowPath((0, 1, 3), (0, 1))
    assert verify_subdivision(q, SubdivisionCertificate(branch, {(0, 1): p}), 2).accepted
    p = RainbowPath((0, 3), (0,))
    assert "not an edge" in verify_subdivision(q, SubdivisionCertificate(branch, {(0, 1): p}), 2).reason
    # two paths sharing colour 0
    cert = SubdivisionCertificate((0, 1, 3), {
        (0, 1): RainbowPath((0, 1), (0,)),
        (0, 2): RainbowPath((0, 2, 3), (1, 0)),
        (1, 2): RainbowPath((1, 3), (1,)),
    })
    assert "repeated colour" in verify_subdivision(q, cert, 3).reason


def test_certificate_round_trip():
    _, cert = k4_cert()
    again = SubdivisionCertificate.loads(cert.dumps())
    assert again.branch == cert.branch and again.paths == cert.paths
    assert again.dumps() == cert.dumps()
    p = RainbowPath((3, 1, 4), (7, 2))
    assert RainbowPath.from_json(p.to_json()) == p
    assert p.reversed() == RainbowPath((4, 1, 3), (2, 7))


def test_shortcut_walk():
    p = shortcut_walk([0, 1, 2, 1, 3], [5, 6, 6, 7])
    assert p == RainbowPath((0, 1, 3), (5, 7))
    p = shortcut_walk([0, 1, 2, 3, 0, 4], [1, 2, 3, 4, 5])
    assert p == RainbowPath((0, 4), (5,))


@given(st.lists(st.integers(0, 6), min_size=1, max_size=15))
def test_shortcut_walk_is_simple_and_keeps_ends(walk):
    cols = list(range(len(walk) - 1))
    p = shortcut_walk(walk, cols)
    assert p.is_simple() and p.start == walk[0] and p.end == walk[-1]
    assert set(p.colours) <= set(cols)


@given(st.integers(0, 10_000), st.integers(3, 9), st.floats(0.2, 0.9))
@settings(max_examples=80, deadline=None)
def test_rainbow_cycle_agrees_with_reference(seed, n, p):
    g = random_graph(seed, n, p)
    cyc = brute_rainbow_cycle(g)
    assert (cyc is not None) == _brute.has_rainbow_cycle(g)
    if cyc is not None:
        assert cyc.vertices[0] == cyc.vertices[-1]
        assert len(set(cyc.vertices)) == len(cyc) and len(set(cyc.colours)) == len(cyc)
        for a, b, c in zip(cyc.vertices, cyc.vertices[1:], cyc.colours):
            assert g.colour_of(a, b) == c


def test_rainbow_cycle_examples():
    # a cube cycle uses every direction an even number of times
    c4 = ColouredGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [0, 1, 0, 1])
    assert brute_rainbow_cycle(c4) is None
    for m in (2, 3, 4):
        assert brute_rainbow_cycle(gen_hypercube(m)) is None
    assert len(brute_rainbow_cycle(complete(4), 3)) == 3
    sub = complete(5).full_view().induced([1, 2, 3])
    cyc = brute_rainbow_cycle(sub)
    assert set(cyc.vertices) == {1, 2, 3}


@given(st.integers(0, 10_000), st.integers(2, 7), st.floats(0.2, 0.9), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_brute_paths_agree_with_reference(seed, n, p, max_len):
    g = random_graph(seed, n, p)
    got = brute_rainbow_paths(g, 0, max_len, [n - 1], [0])
    assert set(got) == _brute.rainbow_reachable(g, 0, max_len, [n - 1], [0])


@given(st.integers(0, 10_000), st.integers(1, 9), st.floats(0.1, 0.9))
@settings(max_examples=60, deadline=None)
def test_subset_table_matches_itertools(seed, n, p):
    g = random_graph(seed, n, p)
    tab = SubsetTable(g)
    edges = _brute.edge_list(g)
    for mask in range(1, 1 << n):
        S = tab.vertices_of(mask)
        assert tab.edges[mask] == _brute.induced_edges(edges, S)
        assert tab.sizes[mask] == len(S)
    if g.m:
        best = tab.best(tab.sizes > 0)
        assert Fraction(int(tab.edges[best]), int(tab.sizes[best])) == _brute.max_density(g)


def test_subset_table_cap():
    with pytest.raises(ExhaustiveCapError):
        SubsetTable(complete(17))
    assert SubsetTable(complete(17).full_view().induced(range(16))).nv == 16


def test_d_minimal_reasons():
    assert brute_d_minimal_check(complete(4), 3).ok
    r = brute_d_minimal_check(complete(5), 3)
    assert not r.ok and r.counterexample == (0, 1, 2, 3)
    assert "below" in brute_d_minimal_check(complete(4), 4).reason
    assert "removed" in brute_d_minimal_check(complete(4), Fraction(5, 2)).reason


def test_touching_edge_deficits():
    # in a d-minimal graph every set touches at least d|S|/2 edges
    assert touching_edge_deficits(complete(4), 3) == []
    star = ColouredGraph(4, [(0, 1), (0, 2), (0, 3)], [0, 1, 2])
    assert (1,) in touching_edge_deficits(star, 3)
