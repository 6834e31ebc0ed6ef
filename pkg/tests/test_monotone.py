from dataclasses import replace
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamswitch.analysis import switch_neighbors
from hamswitch.claims import _monotone_instance, path_fixtures
from hamswitch.enumerate import ham_cycles, two_factors
from hamswitch.families import build_staircase, planted_cycle, random_dense_graph, random_dense_monotone
from hamswitch.graph import ConstructionError, Graph, GraphError, Kind, PreconditionError, classify, cycles_of, min_degree, path_edges
from hamswitch.monotone import (
    MonotoneGraph,
    NotMonotone,
    PathSystem,
    ReconstructionError,
    join_paths,
    phi,
    phi1,
    phi1_inverse,
    phi_trace,
    quadrants,
    quadrants_complete,
    validate_monotone,
)


def from_matrix(rows) -> Graph:
    n = len(rows)
    es = frozenset((i, n + j) for i, row in enumerate(rows) for j, x in enumerate(row) if x)
    return Graph(2 * n, es, (frozenset(range(n)), frozenset(range(n, 2 * n))))


def test_validate_example_matrix():
    rows = [
        [1, 1, 1, 0, 0, 0],
        [1, 1, 1, 1, 0, 0],
        [0, 1, 1, 1, 1, 0],
        [0, 0, 1, 1, 1, 0],
        [0, 0, 1, 1, 1, 1],
        [0, 0, 1, 1, 1, 1],
    ]
    mg = validate_monotone(from_matrix(rows))
    assert list(zip(mg.r, mg.t)) == [(1, 3), (1, 4), (2, 5), (3, 5), (3, 6), (3, 6)]
    assert mg.matrix() == rows


def test_validate_staircase():
    mg = validate_monotone(build_staircase(6).graph)
    assert list(zip(mg.r, mg.t)) == [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 6)]


def test_not_monotone():
    with pytest.raises(NotMonotone):
        validate_monotone(from_matrix([[1, 0, 1], [1, 1, 0], [0, 1, 1]]))
    with pytest.raises(NotMonotone):
        MonotoneGraph(3, (2, 1, 1), (3, 3, 3))
    with pytest.raises(PreconditionError):
        validate_monotone(Graph.complete(4))


def test_quadrants():
    mg = validate_monotone(Graph.complete_bipartite(4))
    assert quadrants_complete(mg)
    a1, a2, b1, b2 = quadrants(mg)
    assert a1 == [0, 1] and b1 == [4, 5] and a2 == [2, 3] and b2 == [6, 7]
    odd = MonotoneGraph(5, (1,) * 5, (5,) * 5)
    a1, a2, b1, b2 = quadrants(odd)
    assert len(a1) == 3 and len(a2) == 2  # ceil(n/2) split
    # the staircase is sparse, so the quadrant claim does not apply
    with pytest.raises(PreconditionError):
        quadrants(build_staircase(6))
    assert not quadrants_complete(build_staircase(6))


@given(st.integers(0, 10_000), st.integers(4, 9))
def test_dense_monotone_quadrants(seed, n):
    mg = random_dense_monotone(n, seed, (n + 1) // 2)
    g = mg.graph
    assert g.has_edge(mg.a(1), mg.b(1)) and g.has_edge(mg.a(n), mg.b(n))
    assert quadrants_complete(mg)
    quadrants(mg)


def test_phi1_single_cycle():
    mg = validate_monotone(Graph.complete_bipartite(4))
    h = ham_cycles(mg.graph)[0]
    ps = phi1(h, mg)
    assert len(ps.paths) == 1 and len(ps.cuts) == 1 and not ps.glues
    assert phi1_inverse(ps, mg) == h


def test_phi1_staircase_n8():
    mg = build_staircase(8)
    fs = two_factors(mg.graph)
    assert len(fs) == 169
    images = [phi1(f, mg) for f in fs]
    assert len({p.edges for p in images}) == len(fs)
    for f, ps in zip(fs, images):
        assert phi1_inverse(ps, mg) == f
        covered = [v for p in ps.paths for v in p]
        assert sorted(covered) == list(range(16))


@pytest.mark.parametrize("n,seed", [(4, 0), (5, 1), (6, 9)])
def test_phi1_dense_instances(n, seed):
    row = _monotone_instance((n, seed))
    assert row["injective"] and row["inverse_identity"] and row["quadrants_complete"]
    assert row["phi1_lipschitz_excess"] <= 0
    assert row["phi_lipschitz_excess"] <= 0
    assert row["join_ok"]


def test_phi1_inverse_rejects_corruption():
    mg = random_dense_monotone(6, 9, 4)
    fs = two_factors(mg.graph)
    rng = np.random.default_rng(0)
    raised = 0
    for f in fs[::40]:
        ps = phi1(f, mg)
        for key in ("a1", "b1", "a2b2"):
            path = list(getattr(ps, key))
            if len(path) < 3:
                continue
            i, j = sorted(int(x) for x in rng.choice(len(path), 2, replace=False))
            path[i], path[j] = path[j], path[i]
            bad = replace(ps, **{key: tuple(path)})
            try:
                out = phi1_inverse(bad, mg)
            except (ReconstructionError, GraphError, ValueError):
                raised += 1
                continue
            # never a wrong answer: anything returned really maps to the input
            assert phi1(out, mg) == bad
    assert raised > 0


def test_join_needs_strict_density():
    # two K_{2,2} blocks joined by one edge: min degree n/2 and no Hamiltonian cycle
    mg = MonotoneGraph(4, (1, 1, 2, 3), (2, 2, 4, 4))
    g = mg.graph
    assert 2 * min_degree(g) == 4 and not ham_cycles(g)
    paths = [[0, 4, 1, 5], [2, 6, 3, 7]]
    with pytest.raises(ConstructionError):
        join_paths(paths, g)


def _check_join(paths, g):
    jr = join_paths(paths, g)
    k = len([p for p in paths if len(p)])
    assert classify(g, jr.cycle) is Kind.HAM_CYCLE
    assert jr.edits <= 3 * k
    assert jr.edits == len(jr.cycle ^ frozenset().union(*(path_edges(p) for p in paths)))
    counts = [s["paths"] for s in jr.steps]
    assert all(a > b for a, b in zip(counts, counts[1:]))
    return jr


def test_join_hamiltonian_path():
    g = Graph.complete(7)
    jr = _check_join([list(range(7))], g)
    assert jr.edits == 1
    g = random_dense_graph(12, 7, 3)
    h = planted_cycle(g, 3)
    order = list(cycles_of(g.n, h)[0])
    jr = _check_join([order], g)
    assert jr.edits <= 3


def test_join_single_vertex_path():
    g = random_dense_graph(11, 6, 5)
    order = list(cycles_of(g.n, planted_cycle(g, 5))[0])
    jr = _check_join([order[:1], order[1:]], g)
    assert jr.edits <= 6
    mg = random_dense_monotone(6, 9, 4)
    h = ham_cycles(mg.graph, limit=1)[0]
    order = list(cycles_of(mg.graph.n, h)[0])
    _check_join([order[:1], order[1:]], mg.graph)


@pytest.mark.parametrize("host", range(6))
def test_join_k_path_fixtures(host):
    if host < 3:
        mg = random_dense_monotone(5 + host, host, (5 + host) // 2 + 1)
        g = mg.graph
        h0 = ham_cycles(g, limit=1)[0]
    else:
        g = random_dense_graph(9 + 3 * host, (9 + 3 * host) // 2 + 1, host)
        h0 = planted_cycle(g, host)
    for seed in range(10):
        for paths in path_fixtures(g, h0, 100 * host + seed):
            jr = _check_join(paths, g)
            if len(paths) == 3:
                assert jr.edits <= 9


def test_join_precondition():
    g = random_dense_graph(12, 5, 0)
    with pytest.raises(PreconditionError):
        join_paths([list(range(12))], g)
    with pytest.raises(ValueError):
        join_paths([[0, 1], [1, 2]], Graph.complete(3))


def test_phi_on_hamiltonian_cycles():
    mg = random_dense_monotone(6, 4, 4)
    for h in ham_cycles(mg.graph)[::25]:
        out = phi(h, mg)
        assert classify(mg.graph, out) is Kind.HAM_CYCLE
        assert len(out ^ h) <= 12


def test_phi_lipschitz_on_switch_neighbours():
    mg = random_dense_monotone(5, 1, 3)
    g = mg.graph
    fs = two_factors(g)
    for f in fs[::7]:
        pf = phi(f, mg)
        for f2 in switch_neighbors(f, g, 2, "2factor"):
            assert len(phi(f2, mg) ^ pf) <= 3 * len(f ^ f2) + 18


def test_phi_preimage_bounded():
    mg = random_dense_monotone(5, 0, 3)
    counts = {}
    for f in two_factors(mg.graph):
        h = phi(f, mg)
        counts[h] = counts.get(h, 0) + 1
    assert max(counts.values()) <= mg.graph.m ** 9


def test_phi_trace_consistent():
    mg = random_dense_monotone(5, 2, 3)
    f = two_factors(mg.graph)[3]
    ps, jr = phi_trace(f, mg)
    assert isinstance(ps, PathSystem) and jr.cycle == phi(f, mg)
