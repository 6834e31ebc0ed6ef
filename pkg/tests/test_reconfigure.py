from dataclasses import replace
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamswitch.enumerate import ham_cycles, two_factors
from hamswitch.families import planted_cycle, random_dense_graph, random_ham_cycle, random_two_factor
from hamswitch.graph import ConstructionError, Graph, Kind, PreconditionError, classify, cycle_edges, cycles_of, decompose_alternating, short_alternating_circuits
from hamswitch.reconfigure import (
    DIRECT_CIRCUIT,
    GLUE,
    MACRO_4SWITCH,
    WalkNotFound,
    find_walk6,
    iter_walks6,
    macro_step,
    reconnect,
    transform_2factor,
    transform_ham,
)


def check_reconnect(t, h, g):
    tr = reconnect(t, h, g)
    comps = len(cycles_of(g.n, t))
    assert len(tr) <= comps - 1
    assert classify(g, tr.final) is Kind.HAM_CYCLE
    assert len(tr.final ^ h) <= len(t ^ h)
    prev_c, prev_d = comps, len(t ^ h)
    for s in tr.steps:
        assert s.size <= 3
        c = len(cycles_of(g.n, s.state))
        assert c < prev_c
        assert len(s.state ^ h) <= prev_d
        prev_c, prev_d = c, len(s.state ^ h)
    assert tr.replay() == tr.final
    return tr


def check_ham_trace(tr, h1, h2, g):
    assert tr.initial == h1 and tr.final == h2
    assert len(tr) <= len(h1 ^ h2)
    prev = len(h1 ^ h2)
    for s in tr.steps:
        assert classify(g, s.state) is Kind.HAM_CYCLE
        assert len(s.switch) <= 20
        d = len(s.state ^ h2)
        assert d <= prev - 2  # parity makes every drop even
        prev = d
    assert tr.replay() == h2


def test_reconnect_trivial():
    g = Graph.complete(6)
    h = cycle_edges(range(6))
    tr = reconnect(h, h, g)
    assert len(tr) == 0 and tr.final == h


def test_reconnect_k6_exhaustive():
    g = Graph.complete(6)
    hs = ham_cycles(g)
    assert len(hs) == 60
    for t in two_factors(g):
        for h in hs:
            check_reconnect(t, h, g)


def test_reconnect_k7_all_factors():
    g = Graph.complete(7)
    hs = ham_cycles(g)[::18]
    for t in two_factors(g):
        for h in hs:
            check_reconnect(t, h, g)


def test_reconnect_case_coverage():
    seen = set()
    for i in range(12):
        g = random_dense_graph(30, 23, 300 + i)
        h0 = planted_cycle(g, 300 + i)
        for j in range(20):
            t = random_two_factor(g, h0, 1000 * i + 2 * j, 300)
            h = random_ham_cycle(g, h0, 1000 * i + 2 * j + 1, 300)
            tr = check_reconnect(t, h, g)
            seen.update(s.detail["case"] for s in tr.steps)
    assert seen == {"general", "y=v+", "y=w", "y=a", "y=b+"}


def test_reconnect_general_case_switches_along_the_six_cycle():
    g = random_dense_graph(30, 23, 7)
    h0 = planted_cycle(g, 7)
    for j in range(40):
        t = random_two_factor(g, h0, 2 * j, 300)
        tr = reconnect(t, random_ham_cycle(g, h0, 2 * j + 1, 300), g)
        for s in tr.steps:
            d = s.detail
            if d["case"] != "general":
                continue
            v, a, x, y, b, w = (d[k] for k in "vaxybw")
            ring = [v, a, x, y, b, w]
            hexagon = {tuple(sorted((ring[i], ring[(i + 1) % 6]))) for i in range(6)}
            assert s.switch == hexagon
            return
    pytest.fail("no general-case step met")


def test_reconnect_needs_degree():
    g = Graph.cycle(6)
    with pytest.raises(PreconditionError):
        reconnect(g.edges, g.edges, g)


@given(st.integers(0, 10_000))
def test_reconnect_random_dense(seed):
    g = random_dense_graph(32, 23, seed)
    h0 = planted_cycle(g, seed)
    check_reconnect(random_two_factor(g, h0, seed + 1, 300), random_ham_cycle(g, h0, seed + 2, 300), g)


def test_macro_direct_circuit():
    g = Graph.complete(30)
    h1 = cycle_edges(range(30))
    # reverse the segment 1..3: a single alternating 4-circuit
    h2 = cycle_edges([0, 3, 2, 1] + list(range(4, 30)))
    ms = macro_step(h1, h2, g)
    assert ms.kind == DIRECT_CIRCUIT and ms.size == 2 and ms.state == h2


@given(st.integers(0, 10_000))
def test_macro_step_net_gain(seed):
    g = random_dense_graph(34, 24, seed)
    h0 = planted_cycle(g, seed)
    h1 = random_ham_cycle(g, h0, seed + 1, 300)
    h2 = random_ham_cycle(g, h0, seed + 2, 300)
    if h1 == h2:
        return
    ms = macro_step(h1, h2, g)
    assert ms.size <= 4
    assert len(cycles_of(g.n, ms.state)) <= 3
    assert len(ms.state ^ h2) <= len(h1 ^ h2) - 1
    if ms.kind == MACRO_4SWITCH:
        a23, a45 = ms.walk.second_edges
        assert a23 in ms.state and a45 in ms.state
        assert ms.walk.is_valid(h1, h2)
        assert 1 <= ms.tried <= ms.candidates


EIGHT_CIRCUIT = [11, 12, 13, 14, 15, 16, 17, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0, 26, 27, 28, 29, 18, 19, 20, 21, 22, 23, 24, 25]


def four_opt_pairs(n, count, seed):
    """Hamiltonian cycles of K_n differing from 0..n-1 by one 8-edge alternating circuit."""
    rng = np.random.default_rng(seed)
    h1 = cycle_edges(range(n))
    while count:
        cuts = sorted(int(c) for c in rng.choice(n, 4, replace=False))
        segs = [list(range(cuts[i] + 1, cuts[i + 1] + 1)) for i in range(3)]
        segs.append(list(range(cuts[3] + 1, n)) + list(range(cuts[0] + 1)))
        order = list(segs[0])
        for i in rng.permutation([1, 2, 3]):
            order += segs[i][::-1] if rng.random() < 0.5 else segs[i]
        h2 = cycle_edges(order)
        if len(h1 ^ h2) == 8 and not short_alternating_circuits(h1, h2, 6):
            count -= 1
            yield h1, h2


def test_find_walk6():
    h1 = cycle_edges(range(30))
    with pytest.raises(WalkNotFound):
        find_walk6(h1, cycle_edges([0, 3, 2, 1] + list(range(4, 30))))
    h2 = cycle_edges(EIGHT_CIRCUIT)
    (circ,) = decompose_alternating(h1, h2)
    assert len(circ) == 8
    w = find_walk6(h1, h2)
    assert w.vertices == (0, 29, 18, 17, 10, 11) == circ.vertices[:6]
    assert w.is_valid(h1, h2)


def test_macro_step_on_eight_circuits():
    g = Graph.complete(30)
    for h1, h2 in four_opt_pairs(30, 60, 1):
        w = find_walk6(h1, h2)
        assert w.is_valid(h1, h2)
        ms = macro_step(h1, h2, g)
        assert ms.kind == MACRO_4SWITCH and ms.walk == w
        assert len(cycles_of(g.n, ms.state)) <= 3 and len(ms.state ^ h2) < 8
        tr = transform_ham(h1, h2, g)
        check_ham_trace(tr, h1, h2, g)


def test_walks_are_valid_everywhere():
    g = random_dense_graph(36, 26, 3)
    h0 = planted_cycle(g, 3)
    a, b = random_ham_cycle(g, h0, 1, 400), random_ham_cycle(g, h0, 2, 400)
    walks = list(iter_walks6(a, b))
    assert walks and all(w.is_valid(a, b) for w in walks)


def test_transform_ham_identity_and_k30():
    g = Graph.complete(30)
    h = cycle_edges(range(30))
    assert len(transform_ham(h, h, g)) == 0
    h2 = random_ham_cycle(g, h, 5, 500)
    tr = transform_ham(h, h2, g)
    check_ham_trace(tr, h, h2, g)
    for s in tr.steps:
        assert s.annotation == GLUE and s.substeps
        assert s.substeps[0].annotation in (MACRO_4SWITCH, DIRECT_CIRCUIT)


@given(st.integers(0, 10_000))
def test_transform_ham_random_dense(seed):
    n = 28 + seed % 13
    g = random_dense_graph(n, -(-n // 2) + 7, seed)
    h0 = planted_cycle(g, seed)
    h1, h2 = random_ham_cycle(g, h0, seed + 1, 300), random_ham_cycle(g, h0, seed + 2, 300)
    check_ham_trace(transform_ham(h1, h2, g), h1, h2, g)


@pytest.mark.parametrize("seed", [0, 1])
def test_transform_ham_bipartite(seed):
    g = Graph.complete_bipartite(28) if seed == 0 else random_dense_graph(30, 22, seed, bipartite=True)
    order = [v for pair in zip(range(g.side_size), range(g.side_size, g.n)) for v in pair]
    h0 = cycle_edges(order) if seed == 0 else planted_cycle(g, seed)
    h1, h2 = random_ham_cycle(g, h0, 11, 400), random_ham_cycle(g, h0, 12, 400)
    tr = transform_ham(h1, h2, g, bipartite=True)
    check_ham_trace(tr, h1, h2, g)


def test_bipartite_flag_needs_bipartition():
    g = Graph.complete(30)
    h = cycle_edges(range(30))
    with pytest.raises(PreconditionError):
        transform_ham(h, h, g, bipartite=True)


def test_transform_needs_degree():
    g = random_dense_graph(30, 16, 0)
    h = planted_cycle(g, 0)
    with pytest.raises(PreconditionError):
        transform_ham(h, h, g)
    with pytest.raises(PreconditionError):
        transform_2factor(h, h, g)


def test_corrupted_trace_is_detected():
    g = Graph.complete(30)
    h = cycle_edges(range(30))
    tr = transform_ham(h, random_ham_cycle(g, h, 9, 500), g)
    bad = replace(tr.steps[0], state=tr.steps[0].state ^ tr.steps[0].switch)
    tr.steps[0] = bad
    with pytest.raises(ConstructionError):
        tr.replay()


@given(st.integers(0, 10_000))
def test_transform_2factor_random_dense(seed):
    n = 28 + seed % 13
    g = random_dense_graph(n, -(-n // 2) + 7, seed)
    h0 = planted_cycle(g, seed)
    f1, f2 = random_two_factor(g, h0, seed + 1, 300), random_two_factor(g, h0, seed + 2, 300)
    tr = transform_2factor(f1, f2, g)
    assert tr.final == f2 and len(tr) <= len(f1 ^ f2)
    prev = len(f1 ^ f2)
    for s in tr.steps:
        assert s.size <= 4 and classify(g, s.state) is not Kind.NOT_2FACTOR
        assert len(s.state ^ f2) < prev
        prev = len(s.state ^ f2)


def test_transform_2factor_k6_smoke():
    # K6 misses the degree condition; the mechanism still runs on most pairs
    g = Graph.complete(6)
    fs = two_factors(g)
    ok = 0
    for f1, f2 in combinations(fs[::5], 2):
        try:
            tr = transform_2factor(f1, f2, g, check=False)
        except ConstructionError:
            continue
        ok += 1
        assert tr.final == f2
        assert all(classify(g, s.state) is not Kind.NOT_2FACTOR for s in tr.steps)
    assert ok > 0


def test_trace_json_shape():
    g = Graph.complete(30)
    h = cycle_edges(range(30))
    d = transform_ham(h, random_ham_cycle(g, h, 3, 200), g).as_dict()
    assert set(d) == {"initial", "steps", "final"}
    assert all({"annotation", "switch", "size", "state"} <= set(s) for s in d["steps"])
