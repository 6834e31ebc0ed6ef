"""Constructive switch sequences between Hamiltonian cycles and 2-factors.

* :func:`reconnect` turns a 2-factor into a Hamiltonian cycle with switches of
  size <= 3 without moving away from a reference cycle.
* :func:`macro_step` moves a Hamiltonian cycle one step closer to a target by
  a switch of size <= 4 into a 2-factor with at most three cycles.
* :func:`transform_ham` chains the two: each macro step is a single switch of
  size <= 10 between Hamiltonian cycles.
* :func:`transform_2factor` does the 2-factor version with switches of size <= 4.

All choices left open by the construction are resolved by taking the
smallest qualifying vertex, so the traces are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .graph import (
    AlternatingCircuit,
    ConstructionError,
    Edge,
    Graph,
    PreconditionError,
    cycles_of,
    decompose_alternating,
    degrees,
    edge,
    min_degree,
    short_alternating_circuits,
)

RECONNECT_GENERAL = "reconnect-general"
RECONNECT_SPECIAL = "reconnect-special"
MACRO_4SWITCH = "macro-4switch"
DIRECT_CIRCUIT = "direct-circuit"
GLUE = "glue"


class WalkNotFound(LookupError):
    pass


@dataclass(frozen=True)
class Step:
    switch: frozenset[Edge]
    state: frozenset[Edge]
    annotation: str
    detail: dict = field(default_factory=dict, compare=False)
    substeps: tuple["Step", ...] = ()

    @property
    def size(self) -> int:
        return len(self.switch) // 2

    def as_dict(self) -> dict:
        out = {
            "annotation": self.annotation,
            "switch": [list(e) for e in sorted(self.switch)],
            "size": self.size,
            "state": [list(e) for e in sorted(self.state)],
        }
        if self.detail:
            out["detail"] = _jsonable(self.detail)
        if self.substeps:
            out["substeps"] = [s.as_dict() for s in self.substeps]
        return out


@dataclass
class TransformTrace:
    initial: frozenset[Edge]
    steps: list[Step]
    final: frozenset[Edge]

    def states(self) -> list[frozenset[Edge]]:
        return [self.initial] + [s.state for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self) -> frozenset[Edge]:
        state = self.initial
        for s in self.steps:
            state = state ^ s.switch
            if state != s.state:
                raise ConstructionError("trace replay diverged")
        return state

    def max_switch_size(self) -> int:
        return max((s.size for s in self.steps), default=0)

    def as_dict(self) -> dict:
        return {
            "initial": [list(e) for e in sorted(self.initial)],
            "steps": [s.as_dict() for s in self.steps],
            "final": [list(e) for e in sorted(self.final)],
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    return obj


# -- helpers ---------------------------------------------------------------------


def _orientation(cycles, flip=()) -> tuple[dict[int, int], dict[int, int]]:
    succ, pred = {}, {}
    for idx, cyc in enumerate(cycles):
        seq = cyc[::-1] if idx in flip else cyc
        k = len(seq)
        for i, v in enumerate(seq):
            succ[v] = seq[(i + 1) % k]
            pred[v] = seq[i - 1]
    return succ, pred


def _apply(state: frozenset[Edge], removed, added, g: Graph) -> frozenset[Edge] | None:
    """``state - removed + added`` if that is a legal switch to a 2-factor."""
    removed, added = frozenset(removed), frozenset(added)
    if len(removed) != len(added) or removed & added:
        return None
    if not removed <= state or added & state or not added <= g.edges:
        return None
    new = (state - removed) | added
    if any(d != 2 for d in degrees(g.n, new)):
        return None
    return new


def _side(g: Graph, bipartite: bool | None) -> tuple[bool, int]:
    if bipartite is None:
        bipartite = g.is_bipartite
    if bipartite and not g.is_bipartite:
        raise PreconditionError("bipartite mode needs a graph with a bipartition")
    return bipartite, (g.side_size if bipartite else g.n)


def _require_degree(g: Graph, bipartite: bool | None, extra: int) -> bool:
    bipartite, n = _side(g, bipartite)
    d = min_degree(g)
    if 2 * d < n + 2 * extra:
        raise PreconditionError(f"minimum degree {d} < n/2 + {extra} (n = {n})")
    return bipartite


# -- reconnect a 2-factor into a Hamiltonian cycle ---------------------------------


def reconnect(t, h, g: Graph, bipartite: bool | None = None, check: bool = True) -> TransformTrace:
    """Merge the cycles of 2-factor ``t`` into a Hamiltonian cycle.

    Uses at most (#cycles - 1) switches of size <= 3 and never increases the
    symmetric difference with the Hamiltonian cycle ``h``. Needs minimum
    degree >= n/2 + 1 (per side for bipartite graphs).
    """
    if check:
        bipartite = _require_degree(g, bipartite, 1)
    else:
        bipartite, _ = _side(g, bipartite)
    h = frozenset(h)
    cur = frozenset(t)
    initial = cur
    steps: list[Step] = []
    while True:
        cycles = cycles_of(g.n, cur)
        if len(cycles) == 1:
            break
        comp = {v: i for i, cyc in enumerate(cycles) for v in cyc}
        best = None
        for u, w in h:
            if comp[u] != comp[w]:
                lo, hi = (u, w) if comp[u] < comp[w] else (w, u)
                key = (comp[lo], lo, hi)
                if best is None or key < best:
                    best = key
        if best is None:
            raise ConstructionError("reference cycle has no edge between two cycles")
        _, v, w = best
        a = min(u for u in g.adj[v] if edge(v, u) in cur and edge(v, u) not in h)
        b = min(u for u in g.adj[w] if edge(w, u) in cur and edge(w, u) not in h)
        if bipartite and g.part_of(a) == g.part_of(b):
            raise ConstructionError("a and b in the same part")
        c1, c2 = comp[v], comp[w]
        flip = set()
        succ0, _ = _orientation(cycles)
        if succ0[a] != v:
            flip.add(c1)
        if succ0[w] != b:
            flip.add(c2)
        succ, pred = _orientation(cycles, flip)
        assert succ[a] == v and succ[w] == b
        xs = {succ[u] for u in g.adj[a]}
        ys = sorted(xs & g.adj[b])
        if not ys:
            raise ConstructionError(f"no y in X and N(b) for v={v}, w={w}")
        y = ys[0]
        x = pred[y]
        if y == succ[v]:
            case, removed, added = "y=v+", [edge(v, y), edge(b, w)], [edge(y, b), edge(w, v)]
        elif y == w:
            case, removed, added = "y=w", [edge(v, a), edge(x, w)], [edge(a, x), edge(w, v)]
        elif y in (a, succ[b]):
            case = "y=a" if y == a else "y=b+"
            removed, added = [edge(v, a), edge(b, w)], [edge(a, b), edge(w, v)]
        else:
            case = "general"
            removed = [edge(v, a), edge(x, y), edge(b, w)]
            added = [edge(a, x), edge(y, b), edge(w, v)]
        new = _apply(cur, removed, added, g)
        if new is None:
            raise ConstructionError(f"reconnect switch ({case}) is not legal")
        n_after = len(cycles_of(g.n, new))
        if n_after >= len(cycles) or len(new ^ h) > len(cur ^ h):
            raise ConstructionError(f"reconnect switch ({case}) made no progress")
        detail = {"case": case, "v": v, "w": w, "a": a, "b": b, "x": x, "y": y, "cycles_before": len(cycles), "cycles_after": n_after}
        ann = RECONNECT_GENERAL if case == "general" else RECONNECT_SPECIAL
        steps.append(Step(frozenset(removed) | frozenset(added), new, ann, detail))
        cur = new
    return TransformTrace(initial, steps, cur)


# -- alternating walks -------------------------------------------------------------


@dataclass(frozen=True)
class AlternatingWalk6:
    """a1..a6 with a1a2, a3a4, a5a6 in the first cycle and a2a3, a4a5 in the second."""

    vertices: tuple[int, int, int, int, int, int]

    @property
    def first_edges(self) -> tuple[Edge, Edge, Edge]:
        a = self.vertices
        return edge(a[0], a[1]), edge(a[2], a[3]), edge(a[4], a[5])

    @property
    def second_edges(self) -> tuple[Edge, Edge]:
        a = self.vertices
        return edge(a[1], a[2]), edge(a[3], a[4])

    def is_valid(self, first, second) -> bool:
        first, second = frozenset(first), frozenset(second)
        es = self.first_edges + self.second_edges
        return (
            self.vertices[0] != self.vertices[5]
            and len(set(es)) == 5
            and all(e in first and e not in second for e in self.first_edges)
            and all(e in second and e not in first for e in self.second_edges)
        )


def iter_walks6(h1, h2) -> Iterator[AlternatingWalk6]:
    """Candidate walks along the canonical alternating decomposition, in order."""
    for circ in decompose_alternating(h1, h2):
        vs, sides = circ.vertices[:-1], circ.sides
        L = len(sides)
        if L < 8:
            continue
        for i in range(0, L):
            if sides[i] != 0:
                continue
            walk = tuple(vs[(i + j) % L] for j in range(6))
            if walk[0] != walk[5]:
                yield AlternatingWalk6(walk)


def find_walk6(h1, h2) -> AlternatingWalk6:
    """First alternating 6-vertex walk; raises WalkNotFound if a 4- or 6-edge
    alternating circuit exists (take that as a direct switch instead)."""
    if short_alternating_circuits(h1, h2, 6):
        raise WalkNotFound("a short alternating circuit exists")
    for walk in iter_walks6(h1, h2):
        return walk
    raise WalkNotFound("no alternating walk with distinct ends")


# -- macro step ----------------------------------------------------------------------


@dataclass
class MacroStep:
    kind: str  # DIRECT_CIRCUIT or MACRO_4SWITCH
    switch: frozenset[Edge]
    state: frozenset[Edge]
    circuit: AlternatingCircuit | None = None
    walk: AlternatingWalk6 | None = None
    b: int | None = None
    c: int | None = None
    candidates: int = 0
    tried: int = 0

    @property
    def size(self) -> int:
        return len(self.switch) // 2


def _direct(cur, target) -> tuple[AlternatingCircuit, frozenset[Edge]] | None:
    circs = short_alternating_circuits(cur, target, 6)
    if not circs:
        return None
    circ = circs[0]
    return circ, (frozenset(cur) - circ.edges_of_side(0)) | circ.edges_of_side(1)


def macro_step(h1, h2, g: Graph, bipartite: bool | None = None, check: bool = True) -> MacroStep:
    """Switch of size <= 4 from Hamiltonian cycle ``h1`` to a 2-factor with at most
    three cycles that is strictly closer to ``h2``."""
    if check:
        bipartite = _require_degree(g, bipartite, 7)
    else:
        bipartite, _ = _side(g, bipartite)
    h1, h2 = frozenset(h1), frozenset(h2)
    if h1 == h2:
        raise ValueError("cycles are equal")
    d0 = len(h1 ^ h2)
    direct = _direct(h1, h2)
    if direct is not None:
        circ, t = direct
        return MacroStep(DIRECT_CIRCUIT, frozenset(circ.edges), t, circuit=circ)
    order = cycles_of(g.n, h1)[0]
    for walk in iter_walks6(h1, h2):
        a = walk.vertices
        if bipartite and g.part_of(a[0]) == g.part_of(a[5]):
            raise ConstructionError("walk ends lie in the same part")
        # orient h1 so that a2 follows a1
        k = len(order)
        i = order.index(a[0])
        seq = order if order[(i + 1) % k] == a[1] else order[::-1]
        succ = {seq[j]: seq[(j + 1) % k] for j in range(k)}
        pred = {v: u for u, v in succ.items()}
        m_set = {pred[v] for v in g.adj[a[5]]}
        near = {succ[x] for x in a} | {pred[x] for x in a}
        pool = g.adj[a[0]] & m_set
        cands = sorted(pool - near)
        for rank, b in enumerate(cands, 1):
            c = succ[b]
            removed = list(walk.first_edges) + [edge(b, c)]
            added = list(walk.second_edges) + [edge(a[5], c), edge(b, a[0])]
            t = _apply(h1, removed, added, g)
            if t is None:
                continue
            if len(cycles_of(g.n, t)) > 3 or len(t ^ h2) > d0 - 1:
                continue
            return MacroStep(MACRO_4SWITCH, frozenset(removed) | frozenset(added), t, walk=walk, b=b, c=c, candidates=len(pool), tried=rank)
    raise ConstructionError("no alternating walk admits a valid 4-switch")


def transform_ham(h1, h2, g: Graph, bipartite: bool | None = None, check: bool = True) -> TransformTrace:
    """Sequence of Hamiltonian cycles from ``h1`` to ``h2``.

    Each step is one switch of size <= 10 (a macro step followed by at most
    two reconnecting switches); the distance to ``h2`` strictly drops each step.
    Needs minimum degree >= n/2 + 7 (per side for bipartite graphs).
    """
    if check:
        bipartite = _require_degree(g, bipartite, 7)
    h1, h2 = frozenset(h1), frozenset(h2)
    cur = h1
    steps: list[Step] = []
    while cur != h2:
        d0 = len(cur ^ h2)
        ms = macro_step(cur, h2, g, bipartite, check=False)
        sub = [Step(ms.switch, ms.state, ms.kind, _macro_detail(ms))]
        rec = reconnect(ms.state, h2, g, bipartite, check=False)
        sub.extend(rec.steps)
        new = rec.final
        if len(new ^ h2) >= d0:
            raise ConstructionError("macro step did not reduce the distance")
        steps.append(Step(cur ^ new, new, GLUE, {"distance_before": d0, "distance_after": len(new ^ h2)}, tuple(sub)))
        cur = new
    return TransformTrace(h1, steps, cur)


def _macro_detail(ms: MacroStep) -> dict:
    out = {"components": len(cycles_of(max(max(e) for e in ms.state) + 1, ms.state))}
    if ms.walk is not None:
        out.update(walk=list(ms.walk.vertices), b=ms.b, c=ms.c, candidates=ms.candidates, tried=ms.tried)
    if ms.circuit is not None:
        out["circuit"] = list(ms.circuit.vertices)
    return out


# -- 2-factors -------------------------------------------------------------------------


def factor_step(f1, f2, g: Graph, bipartite: bool | None = None) -> MacroStep:
    """Switch of size <= 4 from 2-factor ``f1`` to a 2-factor strictly closer to ``f2``."""
    bipartite, _ = _side(g, bipartite)
    f1, f2 = frozenset(f1), frozenset(f2)
    d0 = len(f1 ^ f2)
    direct = _direct(f1, f2)
    if direct is not None:
        circ, t = direct
        return MacroStep(DIRECT_CIRCUIT, frozenset(circ.edges), t, circuit=circ)
    succ, pred = _orientation(cycles_of(g.n, f1))
    for walk in iter_walks6(f1, f2):
        a = walk.vertices
        if bipartite and g.part_of(a[0]) == g.part_of(a[5]):
            raise ConstructionError("walk ends lie in the same part")
        m_set = {succ[v] for v in g.adj[a[5]]}
        near = {succ[x] for x in a} | {pred[x] for x in a}
        pool = g.adj[a[0]] & m_set
        for rank, c in enumerate(sorted(pool - near), 1):
            b = pred[c]
            removed = list(walk.first_edges) + [edge(b, c)]
            added = list(walk.second_edges) + [edge(a[5], b), edge(c, a[0])]
            t = _apply(f1, removed, added, g)
            if t is None or len(t ^ f2) > d0 - 1:
                continue
            return MacroStep(MACRO_4SWITCH, frozenset(removed) | frozenset(added), t, walk=walk, b=b, c=c, candidates=len(pool), tried=rank)
    raise ConstructionError("no alternating walk admits a valid 4-switch")


def transform_2factor(f1, f2, g: Graph, bipartite: bool | None = None, check: bool = True) -> TransformTrace:
    """Sequence of 2-factors from ``f1`` to ``f2`` with switches of size <= 4,
    each strictly reducing the distance to ``f2``. Needs minimum degree >= n/2 + 7."""
    if check:
        bipartite = _require_degree(g, bipartite, 7)
    f1, f2 = frozenset(f1), frozenset(f2)
    cur = f1
    steps: list[Step] = []
    while cur != f2:
        d0 = len(cur ^ f2)
        ms = factor_step(cur, f2, g, bipartite)
        if len(ms.state ^ f2) >= d0:
            raise ConstructionError("2-factor step did not reduce the distance")
        steps.append(Step(ms.switch, ms.state, ms.kind, _macro_detail(ms)))
        cur = ms.state
    return TransformTrace(f1, steps, cur)
