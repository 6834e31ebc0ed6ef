"""The auxiliary chain on almost 2-factors.

States are subgraphs with every degree <= 2 and total deficit sum(2 - d) <= 2:
2-factors, subgraphs with two degree-1 vertices, and subgraphs with one
isolated vertex. Each step picks an ordered pair (i, j) uniformly from all n^2
pairs (i == j holds) and applies

* Type 0: F is a 2-factor and ij is an edge of F -> delete ij.
* Type 1: F is deficient, deg_F(i) < 2, ij in E(G) - F and deg_F(j) == 2 ->
  add ij and delete one of j's two old edges uniformly.
* Type 2: as Type 1 but deg_F(j) < 2 -> just add ij.

Transition weights are kept as integers over the common denominator 2n^2.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .enumerate import DEFAULT_CAP, almost_two_factors, two_factors
from .graph import ConstructionError, Edge, Graph, GraphError, PreconditionError, degrees, edge, min_degree

PAIR_CONVENTION = "ordered pairs (i, j) uniform over all n^2, i == j holds"


@dataclass(frozen=True)
class AlmostTwoFactor:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        d = degrees(self.n, self.edges)
        if any(x > 2 for x in d) or sum(2 - x for x in d) > 2:
            raise GraphError("not an almost 2-factor")

    @property
    def deficit(self) -> tuple[int, ...]:
        """() for a 2-factor, (k, l) for two degree-1 vertices, (k,) for an isolated vertex."""
        return tuple(v for v, x in enumerate(degrees(self.n, self.edges)) if x < 2)

    @property
    def is_two_factor(self) -> bool:
        return not self.deficit


def _adjacency(n: int, edges) -> list[list[int]]:
    nb: list[list[int]] = [[] for _ in range(n)]
    for u, w in edges:
        nb[u].append(w)
        nb[w].append(u)
    return nb


def js_weights(x, g: Graph) -> dict[frozenset[Edge], int]:
    """Integer weights w(x, y) of all moves to y != x; P(x, y) = w / (2 n^2)."""
    x = frozenset(x)
    n = g.n
    nb = _adjacency(n, x)
    out: dict[frozenset[Edge], int] = {}

    def bump(y, w):
        out[y] = out.get(y, 0) + w

    deficient = [v for v in range(n) if len(nb[v]) < 2]
    if not deficient:
        for e in x:
            bump(x - {e}, 4)  # both orientations, weight 2 each
        return out
    for i in deficient:
        for j in sorted(g.adj[i]):
            e = edge(i, j)
            if e in x:
                continue
            if len(nb[j]) < 2:
                bump(x | {e}, 2)
            else:
                for k in nb[j]:
                    bump((x | {e}) - {edge(j, k)}, 1)
    return out


def js_transitions(x, g: Graph) -> dict[frozenset[Edge], Fraction]:
    """Exact P(x, y) for every y != x reachable in one step."""
    den = 2 * g.n * g.n
    return {y: Fraction(w, den) for y, w in js_weights(x, g).items()}


def js_adjacent(x, y, g: Graph) -> tuple[bool, Fraction]:
    x, y = frozenset(x), frozenset(y)
    if x == y:
        return False, Fraction(0)
    p = js_transitions(x, g).get(y, Fraction(0))
    return p > 0, p


def js_step(x, g: Graph, rng: np.random.Generator) -> tuple[frozenset[Edge], str]:
    """One transition; returns the new state and the move type ("hold", "type0", ...)."""
    x = frozenset(x)
    n = g.n
    i, j = (int(v) for v in rng.integers(n, size=2))
    if i == j:
        return x, "hold"
    nb = _adjacency(n, x)
    e = edge(i, j)
    is_2f = all(len(a) == 2 for a in nb)
    if is_2f:
        return (x - {e}, "type0") if e in x else (x, "hold")
    if len(nb[i]) >= 2 or e in x or not g.has_edge(i, j):
        return x, "hold"
    if len(nb[j]) < 2:
        return x | {e}, "type2"
    k = sorted(nb[j])[int(rng.integers(2))]
    return (x | {e}) - {edge(j, k)}, "type1"


# -- distance to the 2-factors ----------------------------------------------------------


@dataclass
class KJS:
    value: float  # max distance, inf if some state cannot reach a 2-factor
    witness: frozenset[Edge] | None  # a state attaining it
    n_states: int
    n_two_factors: int
    max_out_degree: int
    max_in_degree: int


def js_state_graph(g: Graph, cap: int = DEFAULT_CAP):
    """(states, index, out-neighbour weight maps) over all almost 2-factors."""
    states = almost_two_factors(g, cap)
    index = {s: i for i, s in enumerate(states)}
    out = []
    for s in states:
        out.append({index[y]: w for y, w in js_weights(s, g).items()})
    return states, index, out


def k_js(g: Graph, cap: int = DEFAULT_CAP, graph=None) -> KJS:
    """Max over almost 2-factors of the step distance to the nearest 2-factor."""
    states, index, out = graph if graph is not None else js_state_graph(g, cap)
    if not states:
        raise PreconditionError("graph has no almost 2-factors")
    n2 = sum(1 for s in states if all(d == 2 for d in degrees(g.n, s)))
    if n2 == 0:
        raise PreconditionError("graph has no 2-factor")
    rev: list[list[int]] = [[] for _ in states]
    for i, nbrs in enumerate(out):
        for j in nbrs:
            rev[j].append(i)
    dist = [-1] * len(states)
    q = deque()
    for i, s in enumerate(states):
        if all(d == 2 for d in degrees(g.n, s)):
            dist[i] = 0
            q.append(i)
    # distance *to* a 2-factor: walk reversed arcs from the sources
    while q:
        u = q.popleft()
        for v in rev[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    max_in = max(len(r) for r in rev)
    max_out = max(len(o) for o in out)
    if any(d < 0 for d in dist):
        bad = min(i for i, d in enumerate(dist) if d < 0)
        return KJS(float("inf"), states[bad], len(states), n2, max_out, max_in)
    top = max(range(len(states)), key=lambda i: (dist[i], -i))
    return KJS(dist[top], states[top], len(states), n2, max_out, max_in)


# -- repair map -------------------------------------------------------------------------


def _oriented(n: int, x, start: int, end: int) -> dict[int, int]:
    """Predecessor map: the path start -> end in order, cycles canonically."""
    nb = _adjacency(n, x)
    pred: dict[int, int] = {}
    seen = set()
    if start != end:
        prev, cur = None, start
        seen.add(cur)
        while cur != end:
            nxt = next(w for w in nb[cur] if w != prev)
            pred[nxt] = cur
            prev, cur = cur, nxt
            seen.add(cur)
    else:
        seen.add(start)
    for s in range(n):
        if s in seen:
            continue
        prev, cur = None, s
        while True:
            seen.add(cur)
            opts = sorted(w for w in nb[cur] if w != prev)
            nxt = opts[0]
            pred[nxt] = cur
            if nxt == s:
                break
            prev, cur = cur, nxt
    return pred


def repair(x, g: Graph, check: bool = True) -> frozenset[Edge]:
    """Map an almost 2-factor to a 2-factor within symmetric difference 3.

    For deficient ``x`` with degree-1 vertices p, q (or isolated p = q), take the
    smallest z in N(p) with z^- in N(q), where the p..q path is oriented from p
    to q, and replace z z^- by p z and q z^-.
    """
    x = frozenset(x)
    if check and 2 * min_degree(g) < g.n:
        raise PreconditionError("repair needs minimum degree >= n/2")
    d = degrees(g.n, x)
    low = [v for v in range(g.n) if d[v] < 2]
    if not low:
        return x
    if sum(2 - v for v in d) != 2:
        raise GraphError("not an almost 2-factor")
    p, q = (low[0], low[0]) if len(low) == 1 else (low[0], low[1])
    if p != q and g.has_edge(p, q) and edge(p, q) not in x:
        return x | {edge(p, q)}
    for s, t in ((p, q), (q, p)):
        pred = _oriented(g.n, x, s, t)
        for z in sorted(g.adj[s]):
            zm = pred.get(z)
            if zm is None or not g.has_edge(t, zm):
                continue
            removed, add1, add2 = edge(z, zm), edge(s, z), edge(t, zm)
            if add1 in x or add2 in x or add1 == add2:
                continue
            y = (x - {removed}) | {add1, add2}
            if all(v == 2 for v in degrees(g.n, y)):
                return y
    raise ConstructionError("no repair vertex z found")


def p_stability_ratio(g: Graph, cap: int = DEFAULT_CAP) -> Fraction:
    """|almost 2-factors| / |2-factors| as an exact rational."""
    nf = len(two_factors(g, cap))
    if nf == 0:
        raise PreconditionError("ratio undefined: no 2-factors")
    return Fraction(len(almost_two_factors(g, cap)), nf)
