"""Graph families: the parity counterexample, gadget X, locked example,
staircase monotone graphs and random dense test graphs."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import Edge, Graph, PreconditionError, cycle_edges, edge, min_degree
from .monotone import MonotoneGraph

BLUE, RED = "blue", "red"


@dataclass(frozen=True)
class ColoredGraph:
    graph: Graph
    color: dict

    def blue_edges(self, edges) -> list[Edge]:
        return [e for e in edges if self.color[e] == BLUE]


def parity_vertex(m: int, i: int, j: int) -> int:
    """Id of v_{i,j} (1-based ``i`` in 1..3, ``j`` in 1..m)."""
    return (i - 1) * m + (j - 1)


def build_parity_example(m: int) -> tuple[ColoredGraph, frozenset[Edge], frozenset[Edge]]:
    """Three blocks A1, A2, A3 of size ``m`` (odd), cliques on A1 and A3,
    complete joins A1-A2 and A2-A3. Returns the coloured graph and two
    Hamiltonian cycles whose blue-edge counts have different parity."""
    if m < 3 or m % 2 == 0:
        raise PreconditionError("m must be odd and at least 3")
    v = lambda i, j: parity_vertex(m, i, j)  # noqa: E731
    edges = set()
    for blk in (1, 3):
        for j1, j2 in combinations(range(1, m + 1), 2):
            edges.add(edge(v(blk, j1), v(blk, j2)))
    for i in (1, 2):
        for j1 in range(1, m + 1):
            for j2 in range(1, m + 1):
                edges.add(edge(v(i, j1), v(i + 1, j2)))
    g = Graph(3 * m, frozenset(edges))
    a1 = {v(1, j) for j in range(1, m + 1)}
    color = {e: (BLUE if (e[0] in a1 or e[1] in a1) else RED) for e in g.edges}

    # A1 path v21 v11 ... v1m v2m, then the A2/A3 zigzag back to v21
    order = [v(2, 1)] + [v(1, j) for j in range(1, m + 1)] + [v(2, m), v(3, m), v(3, m - 1), v(2, m - 1)]
    for j in range(m - 2, 0, -1):
        order += [v(3, j), v(2, j)]
    order.pop()  # v21 closes the cycle
    h1 = cycle_edges(order)
    swap = {v(1, j): v(3, j) for j in range(1, m + 1)} | {v(3, j): v(1, j) for j in range(1, m + 1)}
    h2 = cycle_edges([swap.get(u, u) for u in order])
    return ColoredGraph(g, color), h1, h2


def blue_parity(cg: ColoredGraph, h) -> str:
    return "even" if len(cg.blue_edges(h)) % 2 == 0 else "odd"


@dataclass(frozen=True)
class GadgetX:
    graph: Graph
    forced: frozenset[Edge]
    cycle: frozenset[Edge]
    ell: int

    @property
    def endpoints(self) -> tuple[int, int]:
        return 0, self.graph.n - 1

    def matchings(self) -> tuple[frozenset[Edge], frozenset[Edge]]:
        """The two perfect matchings of the residual cycle."""
        order = _cycle_order(self.cycle)
        k = len(order)
        m0 = frozenset(edge(order[i], order[(i + 1) % k]) for i in range(0, k, 2))
        return m0, self.cycle - m0

    def ham_paths(self) -> tuple[frozenset[Edge], frozenset[Edge]]:
        m0, m1 = self.matchings()
        return self.forced | m0, self.forced | m1


def _cycle_order(edges) -> list[int]:
    nb: dict[int, list[int]] = {}
    for u, w in sorted(edges):
        nb.setdefault(u, []).append(w)
        nb.setdefault(w, []).append(u)
    start = min(nb)
    order, prev, cur = [start], None, start
    while True:
        nxt = [w for w in nb[cur] if w != prev][0] if prev is not None else nb[cur][0]
        if nxt == start:
            return order
        order.append(nxt)
        prev, cur = cur, nxt


def build_gadget_x(ell: int) -> GadgetX:
    """Graph on ``3*ell + 1`` vertices with exactly two Hamiltonian paths.

    Vertex ``v_i`` has id ``i - 1``. Only odd ``ell`` is supported.
    """
    if ell < 3 or ell % 2 == 0:
        raise PreconditionError("ell must be odd and at least 3")
    n = 3 * ell + 1
    v = lambda i: i - 1  # noqa: E731
    e1 = {edge(v(i), v(i + 1)) for i in range(1, n)}
    e2 = {edge(v(j), v(j + 4)) for j in range(2, n - 4) if j % 3 == 2}
    e2.add(edge(v(3), v(n - 2)))
    g = Graph(n, frozenset(e1 | e2))
    forced = set()
    for i in [1, n] + [i for i in range(4, n - 2) if i % 3 == 1]:
        for w in g.adj[v(i)]:
            forced.add(edge(v(i), w))
    forced = frozenset(forced)
    return GadgetX(g, forced, g.edges - forced, ell)


def locked_sizes(k: int, n: int | None = None) -> tuple[int, int, int]:
    """(n, |A|, |B|) for the locked example; ``n`` defaults to the smallest feasible."""
    if k < 4:
        raise PreconditionError("k must be at least 4")
    ell = k + 1
    if ell % 2 == 0:
        raise PreconditionError("gadget X needs odd ell = k + 1, so k must be even")
    r = 3 * ell + 1
    if n is None:
        n = r + 1
    if n < 3 * k + 5:
        raise PreconditionError(f"n must be at least 3k+5 = {3 * k + 5}")
    if (n + r) % 2 == 0:
        raise PreconditionError("n + r must be odd")
    return n, (n + r - 1) // 2, (n - r + 1) // 2


def build_locked_example(k: int, n: int | None = None) -> Graph:
    """Complete bipartite graph between A and B with a copy of X inside A.

    X occupies the first ``3(k+1) + 1`` ids of A; A comes before B.
    """
    n, size_a, size_b = locked_sizes(k, n)
    x = build_gadget_x(k + 1)
    edges = set(x.graph.edges)
    for a in range(size_a):
        for b in range(size_a, n):
            edges.add((a, b))
    return Graph(n, frozenset(edges))


def build_staircase(n: int) -> MonotoneGraph:
    """Monotone graph whose row i spans columns 1..min(i+1, n)."""
    if n < 4 or n % 2:
        raise PreconditionError("staircase needs even n >= 4")
    return MonotoneGraph(n, tuple(1 for _ in range(n)), tuple(min(i + 1, n) for i in range(1, n + 1)))


def random_dense_graph(n: int, delta_min: int, seed: int, bipartite: bool = False) -> Graph:
    """Random graph with a planted Hamiltonian cycle and minimum degree >= delta_min.

    For ``bipartite=True``, ``n`` is the per-side size and vertices
    ``0..n-1`` / ``n..2n-1`` form the parts.
    """
    rng = np.random.default_rng(seed)
    if bipartite:
        if not 2 <= delta_min <= n:
            raise PreconditionError("need 2 <= delta_min <= n for bipartite graphs")
        total = 2 * n
        pa = rng.permutation(n)
        pb = rng.permutation(n) + n
        order = [int(x) for pair in zip(pa, pb) for x in pair]
        other = lambda v: range(n, 2 * n) if v < n else range(n)  # noqa: E731
    else:
        if not 2 <= delta_min <= n - 1 or n < 3:
            raise PreconditionError("need 2 <= delta_min <= n-1")
        total = n
        order = [int(x) for x in rng.permutation(n)]
        other = lambda v: range(n)  # noqa: E731
    adj = [set() for _ in range(total)]
    for u, w in cycle_edges(order):
        adj[u].add(w)
        adj[w].add(u)
    # top up deficient vertices, preferring deficient partners
    for v in [int(x) for x in rng.permutation(total)]:
        while len(adj[v]) < delta_min:
            cand = [w for w in other(v) if w != v and w not in adj[v]]
            poor = [w for w in cand if len(adj[w]) < delta_min]
            pool = poor or cand
            w = pool[int(rng.integers(len(pool)))]
            adj[v].add(w)
            adj[w].add(v)
    edges = frozenset(edge(u, w) for u in range(total) for w in adj[u] if u < w)
    bip = (frozenset(range(n)), frozenset(range(n, 2 * n))) if bipartite else None
    g = Graph(total, edges, bip)
    assert min_degree(g) >= delta_min
    return g


def planted_cycle(g: Graph, seed: int) -> frozenset[Edge]:
    """A Hamiltonian cycle of a graph built by :func:`random_dense_graph`."""
    rng = np.random.default_rng(seed)
    if g.is_bipartite:
        n = g.n // 2
        pa = rng.permutation(n)
        pb = rng.permutation(n) + n
        order = [int(x) for pair in zip(pa, pb) for x in pair]
    else:
        order = [int(x) for x in rng.permutation(g.n)]
    return cycle_edges(order)


def random_dense_monotone(n: int, seed: int, min_deg: int | None = None, max_width: int | None = None, tries: int = 10_000) -> MonotoneGraph:
    """Random monotone graph with every vertex degree >= ``min_deg`` (default ceil(n/2)).

    Row starts and ends are random non-decreasing walks; ``max_width`` caps the
    row interval lengths, which keeps 2-factor counts small.
    """
    rng = np.random.default_rng(seed)
    if min_deg is None:
        min_deg = (n + 1) // 2
    if max_width is None:
        max_width = n
    for _ in range(tries):
        r, t = [1], []
        for i in range(n):
            if i:
                r.append(min(r[-1] + int(rng.integers(0, 2)), n - min_deg + 1))
            lo = max(r[i] + min_deg - 1, t[-1] if t else 1)
            hi = min(n, r[i] + max_width - 1)
            if lo > hi:
                break
            t.append(int(rng.integers(lo, hi + 1)) if i < n - 1 else n)
        if len(t) < n or t[-1] < r[-1] + min_deg - 1:
            continue
        mg = MonotoneGraph(n, tuple(r), tuple(t))
        if min_degree(mg.graph) >= min_deg:
            return mg
    raise RuntimeError("could not sample a dense monotone graph")

def _local_moves(g: Graph, start, seed: int, steps: int, keep_ham: bool) -> frozenset[Edge]:
    """Random walk of 2-edge swaps from ``start``; a fixture generator, not a sampler."""
    from .graph import cycles_of

    rng = np.random.default_rng(seed)
    cur = set(start)
    for _ in range(steps):
        es = sorted(cur)
        i, j = rng.choice(len(es), size=2, replace=False)
        (u1, v1), (u2, v2) = es[i], es[j]
        if rng.random() < 0.5:
            u2, v2 = v2, u2
        new_a, new_b = edge(u1, u2), edge(v1, v2)
        if len({u1, v1, u2, v2}) < 4 or new_a in cur or new_b in cur:
            continue
        if not (g.has_edge(*new_a) and g.has_edge(*new_b)):
            continue
        cand = (cur - {es[i], es[j]}) | {new_a, new_b}
        if keep_ham and len(cycles_of(g.n, cand)) != 1:
            continue
        if g.is_bipartite and any(len(c) % 2 for c in cycles_of(g.n, cand)):
            continue
        cur = cand
    return frozenset(cur)


def random_ham_cycle(g: Graph, start, seed: int, steps: int = 200) -> frozenset[Edge]:
    """Hamiltonian cycle reached by random 2-opt moves from ``start``."""
    return _local_moves(g, start, seed, steps, keep_ham=True)


def random_two_factor(g: Graph, start, seed: int, steps: int = 200) -> frozenset[Edge]:
    """2-factor reached by random 2-edge swaps from ``start`` (cycles may split)."""
    return _local_moves(g, start, seed, steps, keep_ham=False)
