from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamswitch.enumerate import ham_cycles, two_factors
from hamswitch.families import build_gadget_x, build_parity_example
from hamswitch.graph import (
    Graph,
    GraphError,
    HamCycle,
    Kind,
    ParseError,
    TwoFactor,
    classify,
    cycle_edges,
    cycles_of,
    decompose_alternating,
    edge,
    format_edges,
    format_graph,
    min_degree,
    parse_edges,
    parse_graph,
    path_edges,
    short_alternating_circuits,
    symmetric_difference,
)

from conftest import random_graph


def test_min_degree_examples():
    assert min_degree(Graph.complete(5)) == 4
    assert min_degree(Graph(3, frozenset())) == 0
    cg, _, _ = build_parity_example(3)
    assert cg.graph.n == 9 and min_degree(cg.graph) == 5


def test_classify_examples():
    c5 = Graph.cycle(5)
    assert classify(c5, c5.edges) is Kind.HAM_CYCLE
    tri = cycle_edges([0, 1, 2]) | cycle_edges([3, 4, 5])
    assert classify(Graph.complete(6), tri) is Kind.TWO_FACTOR
    assert classify(Graph.complete(6), path_edges(range(6))) is Kind.NOT_2FACTOR
    # edges outside the host graph are an input error, not a verdict
    with pytest.raises(GraphError):
        classify(c5, cycle_edges([0, 2, 4, 1, 3]))


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(3, frozenset({(0, 0)}))
    with pytest.raises(GraphError):
        Graph(3, frozenset({(0, 5)}))
    with pytest.raises(GraphError):
        Graph(4, frozenset({(0, 1)}), (frozenset({0, 1}), frozenset({2, 3})))


def test_twofactor_types():
    g = Graph.complete(6)
    tf = TwoFactor(g, cycle_edges([0, 1, 2]) | cycle_edges([3, 4, 5]))
    assert len(tf.components) == 2 and not tf.is_hamiltonian
    h = HamCycle.from_order(g, [0, 2, 4, 1, 3, 5])
    assert h.is_hamiltonian and cycle_edges(h.order) == h.edges
    with pytest.raises(GraphError):
        HamCycle(g, tf.edges)
    with pytest.raises(GraphError):
        TwoFactor(g, path_edges(range(6)))


def test_bipartite_twofactor_cycles_even():
    g = Graph.complete_bipartite(3)
    for f in two_factors(g):
        assert all(len(c) % 2 == 0 and len(c) >= 4 for c in cycles_of(g.n, f))


def test_symmetric_difference_examples():
    x = cycle_edges([0, 1, 2, 3])
    assert symmetric_difference(x, x) == frozenset()
    p1, p2 = build_gadget_x(5).ham_paths()
    assert len(symmetric_difference(p1, p2)) == 10
    hs = ham_cycles(Graph.complete(4))
    assert len(hs) == 3
    assert all(len(symmetric_difference(a, b)) == 4 for a, b in combinations(hs, 2))


edge_sets = st.sets(st.tuples(st.integers(0, 7), st.integers(0, 7)).filter(lambda t: t[0] < t[1]), max_size=20).map(frozenset)


@given(edge_sets, edge_sets, edge_sets)
def test_symmetric_difference_algebra(x, y, z):
    d = symmetric_difference(x, y)
    assert len(d) == len(x) + len(y) - 2 * len(x & y)
    assert d == symmetric_difference(y, x)
    assert symmetric_difference(d, z) == symmetric_difference(x, symmetric_difference(y, z))


def test_decompose_examples():
    hs = ham_cycles(Graph.complete(4))
    assert decompose_alternating(hs[0], hs[0]) == []
    circ = decompose_alternating(hs[0], hs[1])
    assert len(circ) == 1 and len(circ[0]) == 4
    cg, h1, h2 = build_parity_example(3)
    parts = decompose_alternating(h1, h2)
    assert sum(len(c) for c in parts) == len(h1 ^ h2)


def _check_decomposition(x, y):
    parts = decompose_alternating(x, y)
    seen = set()
    for c in parts:
        es = c.edges
        assert len(es) % 2 == 0
        for i, e in enumerate(es):
            assert e not in seen
            seen.add(e)
            # sides alternate and each side's edges come from its own factor
            assert (e in x and e not in y) if c.sides[i] == 0 else (e in y and e not in x)
            assert c.sides[i] != c.sides[(i + 1) % len(es)]
        # walk is closed and consecutive edges share the listed vertex
        vs = c.vertices
        assert vs[0] == vs[-1]
        for i, e in enumerate(es):
            assert set(e) == {vs[i], vs[i + 1]}
    assert seen == (x ^ y)
    return parts


@given(st.integers(0, 10_000))
def test_decomposition_reassembles(seed):
    g = random_graph(8, 0.8, seed)
    fs = two_factors(g)
    if len(fs) < 2:
        return
    i, j = seed % len(fs), (seed // 7) % len(fs)
    _check_decomposition(fs[i], fs[j])


def test_short_circuits_are_genuine():
    hs = ham_cycles(Graph.complete(6))
    for a, b in combinations(hs[:12], 2):
        for c in short_alternating_circuits(a, b, 6):
            assert len(c) <= 6
            assert c.edges_of_side(0) <= a - b and c.edges_of_side(1) <= b - a


@given(st.integers(0, 10_000))
def test_format_parse_roundtrip(seed):
    g = random_graph(7, 0.5, seed)
    assert parse_graph(format_graph(g)) == g
    assert parse_edges(format_edges(g.edges, g.n)) == g.edges


def test_parse_bipartite_header():
    g = Graph.complete_bipartite(3)
    text = format_graph(g)
    assert text.startswith("6 9 bipartite 3")
    assert parse_graph(text).bipartition == g.bipartition


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("3 1\n0 x\n", 2),
        ("3 2\n0 1\n", 1),
        ("# comment\n3 1\n\n0 3\n", 4),
        ("3 1\n0 1 2\n", 2),
        ("4 1 bipartite 2\n0 1\n", 1),
    ],
)
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}:")


def test_edge_canonical_order():
    assert edge(5, 2) == (2, 5)
    text = format_edges({(3, 1), (0, 2)}, 4)
    assert text.splitlines()[1:] == ["0 2", "1 3"]
