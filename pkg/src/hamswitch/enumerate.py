"""Brute-force enumeration of Hamiltonian cycles, 2-factors and almost 2-factors.

These are the exact oracles behind every small-instance check. Output order
is lexicographic on sorted edge lists, so state indices are reproducible.
"""
from __future__ import annotations

from itertools import combinations

from .graph import Edge, Graph, edge

HAM = "ham"
TWO_FACTOR = "2factor"
ALMOST = "almost"
CLASSES = (HAM, TWO_FACTOR, ALMOST)

DEFAULT_CAP = 1_000_000


class CapExceeded(RuntimeError):
    def __init__(self, cap: int, count: int):
        super().__init__(f"enumeration cap {cap} exceeded ({count} states found so far)")
        self.cap = cap
        self.count = count


class _Enough(Exception):
    pass


def _canonical(found: list) -> list[frozenset[Edge]]:
    found.sort()
    return [frozenset(es) for es in found]


def ham_cycles(g: Graph, cap: int = DEFAULT_CAP, limit: int | None = None) -> list[frozenset[Edge]]:
    """All Hamiltonian cycles (or the first ``limit`` found, in search order)."""
    n = g.n
    if n < 3:
        return []
    adj = [sorted(g.adj[v]) for v in range(n)]
    if any(len(a) < 2 for a in adj):
        return []
    visited = [False] * n
    visited[0] = True
    path = [0]
    found: list[list[Edge]] = []

    def feasible():
        # every unvisited vertex needs two usable neighbours
        end = path[-1]
        for u in range(n):
            if visited[u]:
                continue
            cnt = 0
            for w in adj[u]:
                if not visited[w] or w == end or w == 0:
                    cnt += 1
                    if cnt >= 2:
                        break
            if cnt < 2:
                return False
        return True

    def dfs():
        cur = path[-1]
        if len(path) == n:
            if g.has_edge(cur, 0) and path[1] < cur:
                found.append(sorted(edge(path[i], path[(i + 1) % n]) for i in range(n)))
                if len(found) > cap:
                    raise CapExceeded(cap, len(found))
                if limit is not None and len(found) >= limit:
                    raise _Enough
            return
        for w in adj[cur]:
            if visited[w]:
                continue
            visited[w] = True
            path.append(w)
            if feasible():
                dfs()
            path.pop()
            visited[w] = False

    try:
        dfs()
    except _Enough:
        pass
    return _canonical(found)


def _degree_bounded(g: Graph, budget: int, cap: int, limit: int | None = None) -> list[frozenset[Edge]]:
    """Subgraphs with all degrees <= 2 and total deficit sum(2 - d) <= budget."""
    n = g.n
    adj = [sorted(g.adj[v]) for v in range(n)]
    deg = [0] * n
    chosen: list[Edge] = []
    chosen_set: set[Edge] = set()
    found: list[list[Edge]] = []

    def rec(v, slack):
        while v < n and deg[v] == 2:
            v += 1
        if v == n:
            found.append(sorted(chosen))
            if len(found) > cap:
                raise CapExceeded(cap, len(found))
            if limit is not None and len(found) >= limit:
                raise _Enough
            return
        need = 2 - deg[v]
        # later vertices only: everything before v is closed
        cands = [u for u in adj[v] if u > v and deg[u] < 2 and edge(v, u) not in chosen_set]
        for take in range(need, -1, -1):
            miss = need - take
            if miss > slack:
                break
            for combo in combinations(cands, take):
                for u in combo:
                    e = edge(v, u)
                    chosen.append(e)
                    chosen_set.add(e)
                    deg[u] += 1
                deg[v] += take
                saved = deg[v]
                deg[v] = 2  # closed
                rec(v + 1, slack - miss)
                deg[v] = saved - take
                for u in combo:
                    deg[u] -= 1
                    chosen_set.discard(chosen.pop())

    try:
        rec(0, budget)
    except _Enough:
        pass
    return _canonical(found)


def two_factors(g: Graph, cap: int = DEFAULT_CAP, limit: int | None = None) -> list[frozenset[Edge]]:
    return _degree_bounded(g, 0, cap, limit)


def almost_two_factors(g: Graph, cap: int = DEFAULT_CAP) -> list[frozenset[Edge]]:
    """2-factors plus subgraphs with two degree-1 vertices or one isolated vertex."""
    return _degree_bounded(g, 2, cap)


def enumerate_states(g: Graph, cls: str, cap: int = DEFAULT_CAP) -> list[frozenset[Edge]]:
    if cls == HAM:
        return ham_cycles(g, cap)
    if cls == TWO_FACTOR:
        return two_factors(g, cap)
    if cls == ALMOST:
        return almost_two_factors(g, cap)
    raise ValueError(f"unknown class {cls!r}; expected one of {CLASSES}")


def first_state(g: Graph, cls: str) -> frozenset[Edge] | None:
    """Some member of the class (the first one the search meets), or None."""
    if cls == HAM:
        found = ham_cycles(g, limit=1)
    elif cls == TWO_FACTOR:
        found = two_factors(g, limit=1)
    elif cls == ALMOST:
        found = _degree_bounded(g, 2, DEFAULT_CAP, 1)
    else:
        raise ValueError(f"unknown class {cls!r}; expected one of {CLASSES}")
    return found[0] if found else None


def ham_paths(g: Graph, cap: int = DEFAULT_CAP) -> list[frozenset[Edge]]:
    """Hamiltonian paths as edge sets (each undirected path once)."""
    n = g.n
    adj = [sorted(g.adj[v]) for v in range(n)]
    visited = [False] * n
    found: set[frozenset[Edge]] = set()
    path: list[int] = []

    def dfs():
        cur = path[-1]
        if len(path) == n:
            if path[0] < path[-1]:
                found.add(frozenset(edge(path[i], path[i + 1]) for i in range(n - 1)))
                if len(found) > cap:
                    raise CapExceeded(cap, len(found))
            return
        for w in adj[cur]:
            if not visited[w]:
                visited[w] = True
                path.append(w)
                dfs()
                path.pop()
                visited[w] = False

    if n == 1:
        return [frozenset()]
    for s in range(n):
        visited[s] = True
        path.append(s)
        dfs()
        path.pop()
        visited[s] = False
    return sorted(found, key=sorted)
