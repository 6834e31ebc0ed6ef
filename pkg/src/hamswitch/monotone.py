"""Monotone (bipartite permutation) graphs and the 2-factor -> Hamiltonian
cycle embedding: quadrant split, cut-and-glue into three paths, and path
joining into a Hamiltonian cycle.

Vertex ids: ``a_i`` is ``i - 1`` and ``b_j`` is ``n + j - 1`` (1-based i, j).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .graph import (
    ConstructionError,
    Edge,
    Graph,
    PreconditionError,
    cycles_of,
    edge,
    min_degree,
    path_edges,
)


class NotMonotone(ValueError):
    pass


class ReconstructionError(ValueError):
    pass


@dataclass(frozen=True)
class MonotoneGraph:
    """Row intervals ``[r_i, t_i]`` (1-based, inclusive) of the biadjacency matrix."""

    n: int
    r: tuple[int, ...]
    t: tuple[int, ...]

    def __post_init__(self):
        if len(self.r) != self.n or len(self.t) != self.n:
            raise ValueError("need one interval per row")
        for i in range(self.n):
            if not 1 <= self.r[i] <= self.t[i] <= self.n:
                raise NotMonotone(f"bad interval in row {i + 1}: {(self.r[i], self.t[i])}")
            if i and (self.r[i] < self.r[i - 1] or self.t[i] < self.t[i - 1]):
                raise NotMonotone(f"intervals not non-decreasing at row {i + 1}")

    def a(self, i: int) -> int:
        return i - 1

    def b(self, j: int) -> int:
        return self.n + j - 1

    @cached_property
    def graph(self) -> Graph:
        n = self.n
        edges = frozenset((i, n + j - 1) for i in range(n) for j in range(self.r[i], self.t[i] + 1))
        return Graph(2 * n, edges, (frozenset(range(n)), frozenset(range(n, 2 * n))))

    def matrix(self) -> list[list[int]]:
        return [[int(self.r[i] <= j <= self.t[i]) for j in range(1, self.n + 1)] for i in range(self.n)]

    @property
    def half(self) -> int:
        return (self.n + 1) // 2


def validate_monotone(g: Graph) -> MonotoneGraph:
    """Interval form of ``g`` under its vertex order (no reordering search)."""
    if g.bipartition is None:
        raise PreconditionError("graph must be bipartite")
    a_side, b_side = (sorted(p) for p in g.bipartition)
    if len(a_side) != len(b_side):
        raise PreconditionError("parts must have equal size")
    col = {b: j + 1 for j, b in enumerate(b_side)}
    r, t = [], []
    for a in a_side:
        cols = sorted(col[b] for b in g.adj[a])
        if not cols:
            raise NotMonotone(f"row of vertex {a} is empty")
        if cols[-1] - cols[0] + 1 != len(cols):
            raise NotMonotone(f"row of vertex {a} is not contiguous")
        r.append(cols[0])
        t.append(cols[-1])
    return MonotoneGraph(len(a_side), tuple(r), tuple(t))


def quadrants(mg: MonotoneGraph, strict: bool = True):
    """Split into (A1, A2, B1, B2) at ceil(n/2) and check both diagonal blocks
    are complete bipartite. Requires every degree >= n/2 when ``strict``."""
    g, n, h = mg.graph, mg.n, mg.half
    if strict and 2 * min_degree(g) < n:
        raise PreconditionError(f"minimum degree {min_degree(g)} < n/2 = {n / 2}")
    a1 = [mg.a(i) for i in range(1, h + 1)]
    a2 = [mg.a(i) for i in range(h + 1, n + 1)]
    b1 = [mg.b(j) for j in range(1, h + 1)]
    b2 = [mg.b(j) for j in range(h + 1, n + 1)]
    if strict:
        for xs, ys in ((a1, b1), (a2, b2)):
            for x in xs:
                if not all(g.has_edge(x, y) for y in ys):
                    raise ConstructionError("diagonal quadrant is not complete bipartite")
    return a1, a2, b1, b2


def quadrants_complete(mg: MonotoneGraph) -> bool:
    a1, a2, b1, b2 = quadrants(mg, strict=False)
    g = mg.graph
    return all(g.has_edge(x, y) for xs, ys in ((a1, b1), (a2, b2)) for x in xs for y in ys)


# -- wrap ordering -----------------------------------------------------------


def wrap_rank(mg: MonotoneGraph, v: int) -> int:
    """Position of ``v`` in a_{h+1} < .. < a_n < a_1 < .. < a_h (same for B)."""
    n, h = mg.n, mg.half
    i = v + 1 if v < n else v - n + 1
    return i - h - 1 if i > h else (n - h) + i - 1


def is_a(mg: MonotoneGraph, v: int) -> bool:
    return v < mg.n


def in_first_half(mg: MonotoneGraph, v: int) -> bool:
    i = v + 1 if v < mg.n else v - mg.n + 1
    return i <= mg.half


@dataclass(frozen=True)
class PathSystem:
    """Up to three vertex-disjoint paths covering all vertices.

    ``a1`` and ``a2b2`` run from their leading A vertex; ``b1`` runs from its
    leading B vertex. Empty groups give empty tuples.
    """

    a1: tuple[int, ...]
    b1: tuple[int, ...]
    a2b2: tuple[int, ...]
    cuts: tuple[Edge, ...] = field(default=(), compare=False)
    glues: tuple[Edge, ...] = field(default=(), compare=False)

    @property
    def paths(self) -> list[tuple[int, ...]]:
        return [p for p in (self.a1, self.b1, self.a2b2) if p]

    @property
    def edges(self) -> frozenset[Edge]:
        out: frozenset[Edge] = frozenset()
        for p in self.paths:
            out |= path_edges(p)
        return out

    def validate(self, mg: MonotoneGraph) -> None:
        seen: set[int] = set()
        for p in self.paths:
            if seen & set(p) or len(set(p)) != len(p):
                raise ReconstructionError("paths are not vertex-disjoint")
            seen |= set(p)
        if seen != set(range(2 * mg.n)):
            raise ReconstructionError("paths do not cover every vertex")
        if not self.edges <= mg.graph.edges:
            raise ReconstructionError("path edge missing from the graph")
        if any(in_first_half(mg, v) for v in self.a2b2):
            raise ReconstructionError("A2uB2 path leaves A2 u B2")
        if self.b1:
            if any(is_a(mg, v) and in_first_half(mg, v) for v in self.b1):
                raise ReconstructionError("B1 path contains an A1 vertex")
            if not any(not is_a(mg, v) and in_first_half(mg, v) for v in self.b1):
                raise ReconstructionError("B1 path has no B1 vertex")

    @classmethod
    def classify(cls, mg: MonotoneGraph, paths: Sequence[Sequence[int]]) -> "PathSystem":
        """Label unlabelled paths as in an image of :func:`phi1`."""
        slots: dict[str, tuple[int, ...]] = {"a1": (), "b1": (), "a2b2": ()}
        for p in paths:
            p = tuple(p)
            if not p:
                continue
            if all(not in_first_half(mg, v) for v in p):
                key = "a2b2"
            elif all(not (is_a(mg, v) and in_first_half(mg, v)) for v in p):
                key = "b1"
            else:
                key = "a1"
            if slots[key]:
                raise ReconstructionError(f"two paths classified as {key}")
            lead = is_a if key != "b1" else (lambda m, v: not is_a(m, v))
            if not lead(mg, p[0]):
                p = p[::-1]
            slots[key] = p
        return cls(**slots)


def _cut_cycle(cyc: Sequence[int], head: int, tail: int) -> tuple[int, ...]:
    """Path obtained by deleting edge head-tail from ``cyc``, from head to tail."""
    k = len(cyc)
    i = cyc.index(head)
    fwd = cyc[(i + 1) % k]
    step = -1 if fwd == tail else 1
    return tuple(cyc[(i + step * s) % k] for s in range(k))


def phi1(f, mg: MonotoneGraph) -> PathSystem:
    """Cut one edge per cycle of the 2-factor ``f`` and glue each group of
    cycles into a single path."""
    g = mg.graph
    fe = frozenset(f.edges) if hasattr(f, "edges") else frozenset(f)
    cycles = cycles_of(g.n, fe)
    rank = lambda v: wrap_rank(mg, v)  # noqa: E731
    groups: dict[str, list] = {"a1": [], "b1": [], "a2b2": []}
    for cyc in cycles:
        top_a = max((v for v in cyc if is_a(mg, v)), key=rank)
        top_b = max((v for v in cyc if not is_a(mg, v)), key=rank)
        if in_first_half(mg, top_a):
            groups["a1"].append((rank(top_a), top_a, cyc))
        elif in_first_half(mg, top_b):
            groups["b1"].append((rank(top_b), top_b, cyc))
        else:
            groups["a2b2"].append((rank(top_a), top_a, cyc))
    out: dict[str, tuple[int, ...]] = {}
    cuts, glues = [], []
    for key, items in groups.items():
        items.sort()
        path: list[int] = []
        for _, head, cyc in items:
            i = cyc.index(head)
            nbrs = (cyc[i - 1], cyc[(i + 1) % len(cyc)])
            tail = min(nbrs, key=rank)
            seg = _cut_cycle(cyc, head, tail)
            cuts.append(edge(head, tail))
            if path:
                if not g.has_edge(path[-1], head):
                    raise ConstructionError(f"gluing edge {path[-1]}-{head} missing")
                glues.append(edge(path[-1], head))
            path.extend(seg)
        out[key] = tuple(path)
    return PathSystem(out["a1"], out["b1"], out["a2b2"], tuple(cuts), tuple(glues))


def _split(mg: MonotoneGraph, path: Sequence[int], lead_is_a: bool) -> list[tuple[int, ...]]:
    if not path:
        return []
    rank = lambda v: wrap_rank(mg, v)  # noqa: E731
    if is_a(mg, path[0]) != lead_is_a:
        raise ReconstructionError("path does not start on the expected side")
    segs, cur, top = [], [path[0]], rank(path[0])
    for v in path[1:]:
        if is_a(mg, v) == lead_is_a and rank(v) > top:
            segs.append(tuple(cur))
            cur, top = [v], rank(v)
        else:
            cur.append(v)
    segs.append(tuple(cur))
    return segs


def phi1_inverse(ps: PathSystem, mg: MonotoneGraph) -> frozenset[Edge]:
    """Recover the 2-factor whose image is ``ps``.

    Raises :class:`ReconstructionError` if ``ps`` is not an image of phi1.
    """
    g = mg.graph
    ps.validate(mg)
    edges: set[Edge] = set()
    for path, lead_is_a in ((ps.a1, True), (ps.b1, False), (ps.a2b2, True)):
        for seg in _split(mg, path, lead_is_a):
            if len(seg) < 4 or not g.has_edge(seg[0], seg[-1]):
                raise ReconstructionError(f"segment starting at {seg[0]} cannot be closed into a cycle")
            edges |= path_edges(seg)
            edges.add(edge(seg[0], seg[-1]))
    f = frozenset(edges)
    try:
        again = phi1(f, mg)
    except Exception as exc:  # pragma: no cover - defensive
        raise ReconstructionError(f"recovered edge set is not a valid 2-factor: {exc}") from None
    if again != ps:
        raise ReconstructionError("path system is not in the image of phi1")
    return f


# -- joining paths into a Hamiltonian cycle --------------------------------------


@dataclass
class JoinResult:
    cycle: frozenset[Edge]
    edits: int
    steps: list[dict]
    path: tuple[int, ...]


def _orient_options(paths, g: Graph, bipartite: bool):
    """Candidate (i, j, rev_i, rev_j) choices of (P1, P2) in deterministic order."""
    k = len(paths)
    for i in range(k):
        for ri in (False, True):
            x1 = paths[i][-1] if ri else paths[i][0]
            for j in range(k):
                if j == i:
                    continue
                for rj in (False, True):
                    y2 = paths[j][0] if rj else paths[j][-1]
                    if bipartite and g.part_of(x1) == g.part_of(y2):
                        continue
                    yield i, j, ri, rj


def join_paths(paths: Sequence[Sequence[int]], g: Graph, bipartite: bool | None = None, check: bool = True) -> JoinResult:
    """Merge vertex-disjoint covering paths into a Hamiltonian cycle.

    Each merge deletes at most one path edge and adds at most two, reducing
    the number of paths by one; the final closure edits at most three edges.
    """
    if bipartite is None:
        bipartite = g.is_bipartite
    side = g.side_size
    if check:
        d = min_degree(g)
        if bipartite and 2 * d < side:
            raise PreconditionError(f"bipartite join needs min degree >= n/2, got {d}")
        if not bipartite and 2 * d <= g.n:
            raise PreconditionError(f"join needs min degree > n/2, got {d}")
    paths = [list(p) for p in paths if len(p)]
    covered = [v for p in paths for v in p]
    if sorted(covered) != list(range(g.n)):
        raise ValueError("paths must be vertex-disjoint and cover every vertex")
    original = frozenset().union(*(path_edges(p) for p in paths))
    steps: list[dict] = []

    while len(paths) > 1:
        merged = None
        for i, j, ri, rj in _orient_options(paths, g, bipartite):
            p1 = paths[i][::-1] if ri else paths[i]
            p2 = paths[j][::-1] if rj else paths[j]
            x1 = p1[0]
            # adjacency merge: x1 next to another path start
            others = [(q, False) for q in range(len(paths)) if q != i] + [(q, True) for q in range(len(paths)) if q != i]
            for q, rq in others:
                pq = paths[q][::-1] if rq else paths[q]
                if g.has_edge(x1, pq[0]):
                    new = p1[::-1] + pq
                    merged = (sorted({i, q}), [new], "adjacent", [], [edge(x1, pq[0])])
                    break
            if merged:
                break
            orient = {q: False for q in range(len(paths))}
            orient[i], orient[j] = ri, rj
            seq = {q: (paths[q][::-1] if orient[q] else paths[q]) for q in range(len(paths))}
            pos = {v: (q, idx) for q, p in seq.items() for idx, v in enumerate(p)}
            cands = []
            for u in g.adj[x1]:
                q, idx = pos[u]
                if idx == 0:
                    continue
                z = seq[q][idx - 1]
                if g.has_edge(z, p2[-1]):
                    cands.append(z)
            if not cands:
                continue
            z = min(cands)
            q, idx = pos[z]
            y2 = p2[-1]
            zp = seq[q][idx + 1]
            if q not in (i, j):
                pi = seq[q]
                new1 = p1[::-1] + pi[idx + 1:]
                new2 = pi[: idx + 1] + p2[::-1]
                merged = (sorted({i, j, q}), [new1, new2], "third-path", [edge(z, zp)], [edge(x1, zp), edge(z, y2)])
            elif q == i:
                # y1 P1 z+ x1 P1 z y2 P2 x2
                new = p1[idx + 1:][::-1] + p1[: idx + 1] + p2[::-1]
                merged = (sorted({i, j}), [new], "same-path", [edge(z, zp)], [edge(zp, x1), edge(z, y2)])
            else:
                # y1 P1 x1 z+ P2 y2 z P2 x2
                new = p1[::-1] + p2[idx + 1:] + p2[: idx + 1][::-1]
                merged = (sorted({i, j}), [new], "second-path", [edge(z, zp)], [edge(x1, zp), edge(y2, z)])
            break
        if merged is None:
            raise ConstructionError("no vertex z in N(x1)^- and N(y2) for any path pair")
        drop, new_paths, case, removed, added = merged
        removed = [e for e in removed if e not in added]
        added = [e for e in added if e not in removed]
        paths = [p for q, p in enumerate(paths) if q not in drop] + new_paths
        steps.append({"case": case, "removed": removed, "added": added, "edits": len(removed) + len(added), "paths": len(paths)})

    path = paths[0]
    x, y = path[0], path[-1]
    if bipartite and g.part_of(x) == g.part_of(y):
        raise ConstructionError("Hamiltonian path endpoints lie in the same part")
    pe = path_edges(path)
    if g.has_edge(x, y) and len(path) > 2:
        cycle = pe | {edge(x, y)}
        steps.append({"case": "close-direct", "removed": [], "added": [edge(x, y)], "edits": 1, "paths": 0})
    else:
        cands = [path[idx - 1] for idx in range(1, len(path)) if g.has_edge(x, path[idx]) and g.has_edge(path[idx - 1], y)]
        if not cands:
            raise ConstructionError("no closing vertex z in N(x)^- and N(y)")
        z = min(cands)
        idx = path.index(z)
        zp = path[idx + 1]
        cycle = (pe - {edge(z, zp)}) | {edge(z, y), edge(zp, x)}
        steps.append({"case": "close-rotate", "removed": [edge(z, zp)], "added": [edge(z, y), edge(zp, x)], "edits": 3, "paths": 0})
    return JoinResult(frozenset(cycle), len(frozenset(cycle) ^ original), steps, tuple(path))


def phi(f, mg: MonotoneGraph) -> frozenset[Edge]:
    """Hamiltonian cycle assigned to the 2-factor ``f``: join the three paths of phi1(f)."""
    return phi_trace(f, mg)[1].cycle


def phi_trace(f, mg: MonotoneGraph) -> tuple[PathSystem, JoinResult]:
    ps = phi1(f, mg)
    return ps, join_paths(ps.paths, mg.graph, bipartite=True)
