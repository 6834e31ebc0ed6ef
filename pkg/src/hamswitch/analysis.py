"""Exact oracles over enumerated state spaces: k-switch state graphs,
irreducibility, exact and Monte Carlo mixing, P-stability ratios."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import log

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .enumerate import DEFAULT_CAP, HAM, TWO_FACTOR, CapExceeded, enumerate_states
from .graph import Edge, Graph, edge
from .js import p_stability_ratio  # noqa: F401  (re-exported)
from .switch import ChainConfig, in_target, theta, transition_probability

EXACT_CAP = 20_000
BFS_CAP = 1_000_000
ALL_STARTS_CAP = 2_500


@dataclass
class StateGraph:
    graph: Graph
    cls: str
    k: int
    states: list[frozenset[Edge]]
    adjacency: list[list[int]]
    lazy: bool = True
    matrix: dict[int, dict[int, Fraction]] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def index(self) -> dict[frozenset[Edge], int]:
        return {s: i for i, s in enumerate(self.states)}

    @property
    def config(self) -> ChainConfig:
        return ChainConfig(k=self.k, target=self.cls, lazy=self.lazy)

    def n_arcs(self) -> int:
        return sum(len(a) for a in self.adjacency)

    def float_matrix(self) -> sp.csr_matrix:
        """Transition matrix in floating point (sparse)."""
        n = len(self.states)
        cfg, g = self.config, self.graph
        rows, cols, vals = [], [], []
        for i, nbrs in enumerate(self.adjacency):
            out = 0.0
            for j in nbrs:
                p = float(transition_probability(self.states[i], self.states[j], cfg, g))
                rows.append(i)
                cols.append(j)
                vals.append(p)
                out += p
            rows.append(i)
            cols.append(i)
            vals.append(1.0 - out)
        return sp.csr_matrix((vals, (rows, cols)), shape=(n, n))


def _masks(states, g: Graph) -> np.ndarray:
    pos = {e: i for i, e in enumerate(g.edge_list)}
    x = np.zeros((len(states), g.m), dtype=np.int16)
    for r, s in enumerate(states):
        x[r, [pos[e] for e in s]] = 1
    return x


def _pairwise_adjacency(states, g: Graph, k: int, block: int = 512) -> list[list[int]]:
    x = _masks(states, g)
    sizes = x.sum(axis=1).astype(np.int32)
    adj: list[list[int]] = [[] for _ in states]
    for lo in range(0, len(states), block):
        inter = x[lo:lo + block].astype(np.int32) @ x.T.astype(np.int32)
        dist = sizes[lo:lo + block, None] + sizes[None, :] - 2 * inter
        rows, cols = np.nonzero((dist > 0) & (dist <= 2 * k))
        for r, c in zip(rows.tolist(), cols.tolist()):
            adj[lo + r].append(c)
    return adj


def switch_neighbors(state, g: Graph, k: int, cls: str) -> set[frozenset[Edge]]:
    """All states of class ``cls`` reachable from ``state`` by one switch of size <= k."""
    state = frozenset(state)
    out = set()
    for ell in range(1, k + 1):
        for removed in combinations(sorted(state), ell):
            rest = state - set(removed)
            slots = [v for e in removed for v in e]
            for pairs in _pairings(slots):
                added = set()
                ok = True
                for u, w in pairs:
                    e = edge(u, w)
                    if u == w or e in state or e in added or not g.has_edge(u, w):
                        ok = False
                        break
                    added.add(e)
                if ok:
                    new = rest | added
                    if in_target(g, new, cls):
                        out.add(frozenset(new))
    return out


def _pairings(items):
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for tail in _pairings(rest):
            yield [(first, items[i])] + tail


def build_state_graph(g: Graph, cls: str, k: int, lazy: bool = True, exact_matrix: bool = False, cap: int | None = None) -> StateGraph:
    """Enumerate the class and join states whose symmetric difference is 2..2k."""
    if cls not in (HAM, TWO_FACTOR):
        raise ValueError("state graphs are built for 'ham' or '2factor'")
    if cap is None:
        cap = EXACT_CAP if exact_matrix else BFS_CAP
    states = enumerate_states(g, cls, cap)
    if len(states) <= EXACT_CAP:
        adj = _pairwise_adjacency(states, g, k)
    else:
        index = {s: i for i, s in enumerate(states)}
        adj = [sorted(index[y] for y in switch_neighbors(s, g, k, cls)) for s in states]
    sg = StateGraph(g, cls, k, states, adj, lazy)
    if exact_matrix:
        if len(states) > EXACT_CAP:
            raise CapExceeded(EXACT_CAP, len(states))
        sg.matrix = exact_transition_matrix(sg)
    return sg


def exact_transition_matrix(sg: StateGraph) -> dict[int, dict[int, Fraction]]:
    cfg, g = sg.config, sg.graph
    rows = {}
    for i, nbrs in enumerate(sg.adjacency):
        row = {j: transition_probability(sg.states[i], sg.states[j], cfg, g) for j in nbrs}
        row[i] = 1 - sum(row.values(), Fraction(0))
        rows[i] = row
    return rows


@dataclass
class MatrixCheck:
    symmetric: bool
    row_stochastic: bool
    column_stochastic: bool
    uniform_stationary: bool
    nonnegative: bool


def check_matrix(matrix: dict[int, dict[int, Fraction]]) -> MatrixCheck:
    n = len(matrix)
    sym = all(matrix[j].get(i) == p for i, row in matrix.items() for j, p in row.items())
    rows_ok = all(sum(row.values(), Fraction(0)) == 1 for row in matrix.values())
    col = [Fraction(0)] * n
    for row in matrix.values():
        for j, p in row.items():
            col[j] += p
    cols_ok = all(c == 1 for c in col)
    # pi uniform: (pi P)_j = col_j / n
    return MatrixCheck(sym, rows_ok, cols_ok, cols_ok, all(p >= 0 for row in matrix.values() for p in row.values()))


@dataclass
class Irreducibility:
    connected: bool
    n_components: int
    representatives: list[int]
    labels: list[int]

    def component_of(self, i: int) -> int:
        return self.labels[i]


def check_irreducible(sg: StateGraph) -> Irreducibility:
    n = len(sg.states)
    if n == 0:
        return Irreducibility(True, 0, [], [])
    rows = [i for i, a in enumerate(sg.adjacency) for _ in a]
    cols = [j for a in sg.adjacency for j in a]
    m = sp.csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    nc, labels = connected_components(m, directed=False)
    reps = []
    seen = set()
    for i, lab in enumerate(labels.tolist()):
        if lab not in seen:
            seen.add(lab)
            reps.append(i)
    return Irreducibility(nc == 1, int(nc), reps, labels.tolist())


def bfs_component(start, neighbors, canon=None, cap: int = BFS_CAP) -> set:
    """States reachable from ``start`` (optionally modulo ``canon``)."""
    canon = canon or (lambda s: s)
    s0 = canon(start)
    seen = {s0}
    q = deque([s0])
    while q:
        cur = q.popleft()
        for nxt in neighbors(cur):
            c = canon(nxt)
            if c not in seen:
                seen.add(c)
                if len(seen) > cap:
                    raise CapExceeded(cap, len(seen))
                q.append(c)
    return seen


# -- parity example: BFS on block-label words ------------------------------------------


def _dihedral_min(word: tuple[int, ...]) -> tuple[int, ...]:
    n = len(word)
    best = word
    for w in (word, word[::-1]):
        for r in range(n):
            cand = w[r:] + w[:r]
            if cand < best:
                best = cand
    return best


def parity_word(order, m: int) -> tuple[int, ...]:
    """Block labels (0, 1, 2 for A1, A2, A3) along a cyclic vertex order, canonicalised."""
    return _dihedral_min(tuple(v // m for v in order))


_PARITY_OK = {(0, 0), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)}


def parity_word_neighbors(word: tuple[int, ...]):
    """Words of all Hamiltonian cycles one 2-switch (2-opt move) away."""
    n = len(word)
    for i in range(1, n):
        for j in range(i + 2, n + 1):
            if (word[i - 1], word[j - 1]) not in _PARITY_OK:
                continue
            if (word[i], word[j % n]) not in _PARITY_OK:
                continue
            yield word[:i] + word[i:j][::-1] + word[j:]


def parity_orbit_component(order, m: int, cap: int = BFS_CAP) -> set[tuple[int, ...]]:
    """Orbits (block-label words) reachable by 2-switches from the cycle ``order``.

    Permuting vertices inside a block is an automorphism that preserves the
    blue count, so reachability between orbits decides 2-switch connectivity.
    """
    return bfs_component(parity_word(order, m), parity_word_neighbors, _dihedral_min, cap)


def word_blue_count(word) -> int:
    n = len(word)
    return sum(1 for i in range(n) if word[i] == 0 or word[(i + 1) % n] == 0)


# -- mixing ------------------------------------------------------------------------------


@dataclass
class MixReport:
    n_states: int
    theta: Fraction | None
    lambda1: float | None
    lambda_min: float | None
    tau: dict[float, int]
    bound: dict[float, float]
    curves: dict[int, list[float]]
    mode: str = "exact"
    trials: int | None = None
    t_grid: list[int] | None = None

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "n_states": self.n_states,
            "theta": None if self.theta is None else str(self.theta),
            "lambda1": self.lambda1,
            "lambda_min": self.lambda_min,
            "tau": {str(e): t for e, t in sorted(self.tau.items())},
            "bound": {str(e): b for e, b in sorted(self.bound.items())},
            "trials": self.trials,
            "t_grid": self.t_grid,
            "curves": {str(x): c for x, c in sorted(self.curves.items())},
        }


def _eigen(p: sp.csr_matrix) -> tuple[float, float]:
    n = p.shape[0]
    if n == 1:
        return 0.0, 1.0
    if n <= 3000:
        w = np.linalg.eigvalsh(p.toarray())
        return float(w[-2]), float(w[0])
    from scipy.sparse.linalg import eigsh

    top = eigsh(p, k=2, which="LA", return_eigenvectors=False)
    low = eigsh(p, k=1, which="SA", return_eigenvectors=False)
    return float(sorted(top)[0]), float(low[0])


def mixing_exact(sg: StateGraph, eps=(0.25,), starts=None, t_max: int = 100_000) -> MixReport:
    """Exact TV curves Delta_x(t) from matrix powers, tau(eps), lambda1 and the
    spectral upper bound (ln|Omega| + ln(1/eps)) / (1 - lambda1)."""
    n = len(sg.states)
    if n > EXACT_CAP:
        raise CapExceeded(EXACT_CAP, n)
    eps = sorted(set(float(e) for e in eps))
    if starts is None:
        if n > ALL_STARTS_CAP:
            raise CapExceeded(ALL_STARTS_CAP, n)
        starts = list(range(n))
    starts = list(starts)
    th = theta(sg.config, sg.graph) if sg.graph.m >= 2 else None
    th_value = th.value if th is not None else None
    if n == 1:
        return MixReport(1, th_value, 0.0, 1.0, {e: 0 for e in eps}, {e: 0.0 for e in eps}, {s: [0.0] for s in starts})
    p = sg.float_matrix()
    lam1, lam_min = _eigen(p)
    dist = np.zeros((n, len(starts)))
    dist[starts, range(len(starts))] = 1.0
    pt = p.T.tocsr()
    curves = {s: [] for s in starts}
    tau: dict[float, int] = {}
    t = 0
    while True:
        tv = 0.5 * np.abs(dist - 1.0 / n).sum(axis=0)
        for c, s in enumerate(starts):
            curves[s].append(float(tv[c]))
        worst = float(tv.max())
        for e in eps:
            if e not in tau and worst <= e:
                tau[e] = t
        if len(tau) == len(eps) or t >= t_max:
            break
        dist = pt @ dist
        t += 1
    gap = 1.0 - lam1
    bound = {e: (log(n) + log(1 / e)) / gap if gap > 0 else float("inf") for e in eps}
    return MixReport(n, th_value, lam1, lam_min, tau, bound, curves)


def mixing_empirical(g: Graph, cfg: ChainConfig, starts, trials: int, t_grid, states=None) -> MixReport:
    """Monte Carlo TV against the uniform distribution on the enumerated class.

    All ``trials`` chains run in lockstep on 64-bit edge masks, so this needs
    at most 64 edges.
    """
    if g.m > 63:
        raise ValueError("empirical mode supports graphs with at most 63 edges")
    if states is None:
        states = enumerate_states(g, cfg.target)
    index = {x: i for i, x in enumerate(states)}
    pos = {e: i for i, e in enumerate(g.edge_list)}

    def mask(s):
        return sum(1 << pos[e] for e in s)

    masks = np.array(sorted(mask(s) for s in states), dtype=np.uint64)
    n = len(masks)
    t_grid = sorted(set(int(t) for t in t_grid))
    rng = np.random.default_rng(cfg.seed)
    bits = np.left_shift(np.uint64(1), np.arange(g.m, dtype=np.uint64))
    tables = _subset_tables(g.m, cfg.k, bits)
    curves: dict[int, list[float]] = {}
    for s in starts:
        start = np.uint64(mask(s))
        cur = np.full(trials, start, dtype=np.uint64)
        curve = []
        t = 0
        for target_t in t_grid:
            while t < target_t:
                cur = _mc_step(cur, masks, bits, cfg, rng, tables)
                t += 1
            idx = np.searchsorted(masks, cur)
            counts = np.bincount(idx, minlength=n)
            curve.append(float(0.5 * np.abs(counts / trials - 1.0 / n).sum()))
        curves[index[frozenset(s)]] = curve
    return MixReport(n, theta(cfg, g).value, None, None, {}, {}, curves, mode="empirical", trials=trials, t_grid=t_grid)


SUBSET_TABLE_CAP = 200_000


def _subset_tables(m: int, k: int, bits) -> list[np.ndarray] | None:
    """Masks of every 2*ell-subset of the edges, per ell, when small enough."""
    from math import comb

    if sum(comb(m, 2 * ell) for ell in range(1, k + 1)) > SUBSET_TABLE_CAP:
        return None
    tables = []
    for ell in range(1, k + 1):
        if 2 * ell > m:
            tables.append(np.zeros(0, dtype=np.uint64))
            continue
        combos = np.array(list(combinations(range(m), 2 * ell)), dtype=np.int64)
        tables.append(np.bitwise_or.reduce(bits[combos], axis=1))
    return tables


def _mc_step(cur, masks, bits, cfg: ChainConfig, rng, tables=None) -> np.ndarray:
    trials = cur.shape[0]
    m = bits.shape[0]
    ell = rng.integers(1, cfg.k + 1, size=trials)
    if tables is not None:
        sw = np.zeros(trials, dtype=np.uint64)
        for e in range(1, cfg.k + 1):
            tab = tables[e - 1]
            sel = ell == e
            if tab.size:
                sw[sel] = tab[rng.integers(tab.size, size=int(sel.sum()))]
    else:
        keys = rng.random((trials, m))
        ranks = np.argsort(np.argsort(keys, axis=1), axis=1)
        chosen = ranks < (2 * ell)[:, None]
        sw = np.bitwise_or.reduce(np.where(chosen, bits[None, :], np.uint64(0)), axis=1)
    new = cur ^ sw
    idx = np.minimum(np.searchsorted(masks, new), masks.shape[0] - 1)
    ok = (masks[idx] == new) & (2 * ell <= m)
    if cfg.lazy:
        ok &= rng.random(trials) >= 0.5
    return np.where(ok, new, cur)


def class_counts(g: Graph, cap: int = DEFAULT_CAP) -> dict[str, int]:
    return {cls: len(enumerate_states(g, cls, cap)) for cls in (HAM, TWO_FACTOR, "almost")}


def is_lazy_spectrum_ok(report: MixReport, tol: float = 1e-9) -> bool:
    return report.lambda_min is not None and report.lambda_min >= -tol and report.lambda1 < 1 - tol
