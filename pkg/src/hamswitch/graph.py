"""Graphs, 2-factors, Hamiltonian cycles and alternating circuits.

Edges are ``(u, v)`` tuples with ``u < v``; edge sets are frozensets of such
tuples. Everything here is immutable once constructed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]
EdgeSet = frozenset


class GraphError(ValueError):
    pass


class PreconditionError(ValueError):
    """An operation was called outside the regime where it is guaranteed to work."""


class ConstructionError(RuntimeError):
    """A step that the precondition should guarantee could not be carried out."""


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def edge_set(edges: Iterable[Sequence[int]]) -> frozenset[Edge]:
    return frozenset(edge(u, v) for u, v in edges)


def sorted_edges(edges: Iterable[Edge]) -> list[Edge]:
    return sorted(edges)


def cycle_edges(cycle: Sequence[int]) -> frozenset[Edge]:
    """Edge set of the closed cycle visiting ``cycle`` in order."""
    k = len(cycle)
    return frozenset(edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))


def path_edges(path: Sequence[int]) -> frozenset[Edge]:
    return frozenset(edge(path[i], path[i + 1]) for i in range(len(path) - 1))


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    bipartition: tuple[frozenset[int], frozenset[int]] | None = None

    def __post_init__(self):
        edges = edge_set(self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {(u, v)} outside 0..{self.n - 1}")
        if self.bipartition is not None:
            a, b = (frozenset(p) for p in self.bipartition)
            object.__setattr__(self, "bipartition", (a, b))
            if a & b or (a | b) != frozenset(range(self.n)):
                raise GraphError("bipartition must partition the vertex set")
            if len(a) != len(b):
                raise GraphError("bipartition parts must have equal size")
            for u, v in edges:
                if (u in a) == (v in a):
                    raise GraphError(f"edge {(u, v)} does not cross the bipartition")

    @classmethod
    def from_edges(cls, n, edges, bipartition=None) -> "Graph":
        return cls(n, edge_set(edges), bipartition)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def complete_bipartite(cls, m: int) -> "Graph":
        """K_{m,m} with parts ``0..m-1`` and ``m..2m-1``."""
        edges = frozenset((u, m + v) for u in range(m) for v in range(m))
        return cls(2 * m, edges, (frozenset(range(m)), frozenset(range(m, 2 * m))))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, cycle_edges(range(n)))

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def edge_list(self) -> list[Edge]:
        return sorted(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_bipartite(self) -> bool:
        return self.bipartition is not None

    @property
    def side_size(self) -> int:
        """Per-part size for bipartite graphs, ``n`` otherwise."""
        return self.n // 2 if self.is_bipartite else self.n

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def part_of(self, v: int) -> int:
        if self.bipartition is None:
            raise GraphError("graph has no bipartition")
        return 0 if v in self.bipartition[0] else 1


def min_degree(g: Graph) -> int:
    if g.n == 0:
        return 0
    return min(len(s) for s in g.adj)


class Kind(enum.Enum):
    NOT_2FACTOR = "not-2-factor"
    TWO_FACTOR = "2-factor"
    HAM_CYCLE = "ham-cycle"


def degrees(n: int, edges: Iterable[Edge]) -> list[int]:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def _adjacency(n: int, edges: Iterable[Edge]) -> list[list[int]]:
    nb: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nb[u].append(v)
        nb[v].append(u)
    for lst in nb:
        lst.sort()
    return nb


def cycles_of(n: int, edges: Iterable[Edge]) -> list[tuple[int, ...]]:
    """Components of a 2-regular edge set as vertex cycles.

    Each cycle starts at its smallest vertex and continues toward the smaller
    of its two neighbours; cycles are listed by smallest vertex.
    """
    nb = _adjacency(n, edges)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        if len(nb[s]) != 2:
            raise GraphError(f"vertex {s} has degree {len(nb[s])}, not 2")
        cyc = [s]
        seen[s] = True
        prev, cur = s, nb[s][0]
        while cur != s:
            if len(nb[cur]) != 2:
                raise GraphError(f"vertex {cur} has degree {len(nb[cur])}, not 2")
            cyc.append(cur)
            seen[cur] = True
            a, b = nb[cur]
            prev, cur = cur, (b if a == prev else a)
        out.append(tuple(cyc))
    return out


def classify(g: Graph, edges: Iterable[Edge]) -> Kind:
    es = edge_set(edges)
    bad = es - g.edges
    if bad:
        raise GraphError(f"edges not in graph: {sorted(bad)[:5]}")
    if any(d != 2 for d in degrees(g.n, es)):
        return Kind.NOT_2FACTOR
    return Kind.HAM_CYCLE if len(cycles_of(g.n, es)) == 1 else Kind.TWO_FACTOR


def is_two_factor(g: Graph, edges) -> bool:
    return classify(g, edges) is not Kind.NOT_2FACTOR


def is_ham_cycle(g: Graph, edges) -> bool:
    return classify(g, edges) is Kind.HAM_CYCLE


@dataclass(frozen=True)
class TwoFactor:
    """A spanning 2-regular subgraph of ``graph``."""

    graph: Graph = field(repr=False)
    edges: frozenset[Edge]

    def __post_init__(self):
        es = edge_set(self.edges)
        object.__setattr__(self, "edges", es)
        if classify(self.graph, es) is Kind.NOT_2FACTOR:
            raise GraphError("edge set is not a 2-factor")
        if self.graph.is_bipartite and any(len(c) % 2 for c in self.components):
            raise GraphError("odd cycle in bipartite graph")

    @cached_property
    def components(self) -> list[tuple[int, ...]]:
        return cycles_of(self.graph.n, self.edges)

    @property
    def is_hamiltonian(self) -> bool:
        return len(self.components) == 1

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class HamCycle(TwoFactor):
    def __post_init__(self):
        super().__post_init__()
        if not self.is_hamiltonian:
            raise GraphError("2-factor is not connected")

    @classmethod
    def from_order(cls, g: Graph, order: Sequence[int]) -> "HamCycle":
        if sorted(order) != list(range(g.n)):
            raise GraphError("order must visit every vertex once")
        return cls(g, cycle_edges(order))

    @property
    def order(self) -> tuple[int, ...]:
        return self.components[0]


def symmetric_difference(x: Iterable[Edge], y: Iterable[Edge]) -> frozenset[Edge]:
    return frozenset(x) ^ frozenset(y)


@dataclass(frozen=True)
class AlternatingCircuit:
    """Closed trail ``vertices[0] .. vertices[-1] == vertices[0]``.

    ``sides[i]`` is 0 when edge ``vertices[i] vertices[i+1]`` belongs to the
    first edge set and 1 when it belongs to the second.
    """

    vertices: tuple[int, ...]
    sides: tuple[int, ...]

    @property
    def edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        return tuple(edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1))

    def edges_of_side(self, side: int) -> frozenset[Edge]:
        return frozenset(e for e, s in zip(self.edges, self.sides) if s == side)

    def __len__(self) -> int:
        return len(self.sides)


def decompose_alternating(x: Iterable[Edge], y: Iterable[Edge]) -> list[AlternatingCircuit]:
    """Split ``x △ y`` into closed circuits alternating between ``x`` and ``y``.

    Both inputs must be 2-regular on a common vertex set. The traversal is
    canonical: start at the smallest vertex with unused difference edges,
    leave along its smallest unused ``x``-edge, always continue along the
    smallest unused edge of the opposite side, and close the circuit the
    first time the start is re-entered along a ``y``-edge.
    """
    x, y = frozenset(x), frozenset(y)
    only = (x - y, y - x)
    nb: list[dict[int, list[int]]] = [{}, {}]
    for side in (0, 1):
        for u, v in only[side]:
            nb[side].setdefault(u, []).append(v)
            nb[side].setdefault(v, []).append(u)
        for lst in nb[side].values():
            lst.sort()
    for v in set(nb[0]) | set(nb[1]):
        if len(nb[0].get(v, ())) != len(nb[1].get(v, ())):
            raise GraphError("inputs are not both 2-regular")
    used: set[Edge] = set()
    remaining = len(only[0]) + len(only[1])
    out = []
    while remaining:
        start = min(v for v in nb[0] if any(edge(v, w) not in used for w in nb[0][v]))
        verts, sides = [start], []
        cur, side = start, 0
        while True:
            nxt = next(w for w in nb[side][cur] if edge(cur, w) not in used)
            used.add(edge(cur, nxt))
            verts.append(nxt)
            sides.append(side)
            cur, side = nxt, 1 - side
            if cur == start and side == 0:
                break
        remaining -= len(sides)
        out.append(AlternatingCircuit(tuple(verts), tuple(sides)))
    return out


def short_alternating_circuits(x, y, max_len: int = 6) -> list[AlternatingCircuit]:
    """All closed alternating trails in ``x △ y`` of length at most ``max_len``.

    Each trail starts with an ``x``-edge. Rotations and reversals of the same
    trail are reported once, ordered by (length, sorted edges).
    """
    x, y = frozenset(x), frozenset(y)
    only = (x - y, y - x)
    nb: list[dict[int, list[int]]] = [{}, {}]
    for side in (0, 1):
        for u, v in sorted(only[side]):
            nb[side].setdefault(u, []).append(v)
            nb[side].setdefault(v, []).append(u)
    found: dict[tuple, AlternatingCircuit] = {}

    def dfs(start, cur, side, verts, used):
        if len(used) >= max_len:
            return
        for w in nb[side].get(cur, ()):
            e = edge(cur, w)
            if e in used:
                continue
            verts.append(w)
            used.append(e)
            if w == start and side == 1 and len(used) >= 4:
                key = (len(used), tuple(sorted(used)))
                if key not in found:
                    sides = tuple(i % 2 for i in range(len(used)))
                    found[key] = AlternatingCircuit(tuple(verts), sides)
            else:
                dfs(start, w, 1 - side, verts, used)
            verts.pop()
            used.pop()

    for s in sorted(nb[0]):
        dfs(s, s, 0, [s], [])
    return [found[k] for k in sorted(found)]


# -- graph file format -------------------------------------------------------


def format_graph(g: Graph) -> str:
    head = f"{g.n} {g.m}"
    if g.bipartition is not None:
        head += f" bipartite {len(g.bipartition[0])}"
    lines = [head] + [f"{u} {v}" for u, v in g.edge_list]
    return "\n".join(lines) + "\n"


def format_edges(edges: Iterable[Edge], n: int) -> str:
    es = sorted(edge_set(edges))
    return "\n".join([f"{n} {len(es)}"] + [f"{u} {v}" for u, v in es]) + "\n"


class ParseError(ValueError):
    def __init__(self, msg: str, line: int):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _parse(text: str):
    rows = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    rows = [(i, r) for i, r in rows if r and not r[0].startswith("#")]
    if not rows:
        raise ParseError("empty file", 1)
    lineno, head = rows[0]
    try:
        n, m = int(head[0]), int(head[1])
    except (IndexError, ValueError):
        raise ParseError("header must start with 'n m'", lineno) from None
    part_a = None
    if len(head) > 2:
        if head[2] != "bipartite" or len(head) != 4:
            raise ParseError("expected 'n m [bipartite a]'", lineno)
        try:
            part_a = int(head[3])
        except ValueError:
            raise ParseError("bipartite part size must be an integer", lineno) from None
    edges = []
    for lineno, r in rows[1:]:
        if len(r) != 2:
            raise ParseError("expected 'u v'", lineno)
        try:
            u, v = int(r[0]), int(r[1])
        except ValueError:
            raise ParseError("vertex ids must be integers", lineno) from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"invalid edge {u} {v}", lineno)
        edges.append(edge(u, v))
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", rows[0][0])
    return n, edges, part_a


def parse_graph(text: str) -> Graph:
    """Read ``n m [bipartite a]`` followed by ``m`` lines ``u v``.

    With a bipartite header the parts are ``0..a-1`` and ``a..n-1``.
    """
    n, edges, part_a = _parse(text)
    bip = None
    if part_a is not None:
        bip = (frozenset(range(part_a)), frozenset(range(part_a, n)))
    try:
        return Graph(n, frozenset(edges), bip)
    except GraphError as exc:
        raise ParseError(str(exc), 1) from None


def parse_edges(text: str) -> frozenset[Edge]:
    _, edges, _ = _parse(text)
    return frozenset(edges)
