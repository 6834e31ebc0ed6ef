"""Shared fixtures and brute-force oracles used as independent references."""
from __future__ import annotations

from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hamswitch.graph import Graph, cycle_edges, degrees, edge

settings.register_profile("default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def brute_ham_cycles(g: Graph) -> set[frozenset]:
    """Hamiltonian cycles by trying every vertex order (n <= 8)."""
    n = g.n
    out = set()
    for rest in permutations(range(1, n)):
        if rest[0] > rest[-1]:
            continue
        order = (0,) + rest
        es = cycle_edges(order)
        if es <= g.edges:
            out.add(es)
    return out


def brute_degree_bounded(g: Graph, deficit: int) -> set[frozenset]:
    """Subgraphs with all degrees <= 2 and total deficit <= ``deficit`` (small graphs only)."""
    n = g.n
    out = set()
    need = n - deficit / 2
    for size in range(max(0, int(np.ceil(need))), n + 1):
        for es in combinations(g.edge_list, size):
            d = degrees(n, es)
            if max(d, default=0) <= 2 and sum(2 - x for x in d) <= deficit:
                out.add(frozenset(es))
    return out


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    es = frozenset(edge(u, v) for u, v in combinations(range(n), 2) if rng.random() < p)
    return Graph(n, es)


@pytest.fixture
def k4():
    return Graph.complete(4)


@pytest.fixture
def k6():
    return Graph.complete(6)
