"""The k-switch Markov chain on Hamiltonian cycles or 2-factors."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple

import numpy as np

from .graph import Edge, Graph, GraphError, Kind, classify, edge_set

HAM = "ham"
TWO_FACTOR = "2factor"


class InvalidSwitch(ValueError):
    pass


@dataclass(frozen=True)
class ChainConfig:
    k: int = 2
    target: str = HAM
    lazy: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.target not in (HAM, TWO_FACTOR):
            raise ValueError(f"target must be {HAM!r} or {TWO_FACTOR!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    def as_dict(self) -> dict:
        return {"k": self.k, "target": self.target, "lazy": self.lazy, "seed": self.seed}


def in_target(g: Graph, edges, target: str) -> bool:
    kind = classify(g, edges)
    if target == HAM:
        return kind is Kind.HAM_CYCLE
    return kind is not Kind.NOT_2FACTOR


def apply_switch(state, switch, g: Graph, target: str, k: int | None = None):
    """``state △ switch`` if that lies in the target class, else ``None``.

    Raises :class:`InvalidSwitch` for switches that are not even-sized subsets
    of E(G) (or larger than ``2k`` when ``k`` is given).
    """
    sw = edge_set(switch)
    if not sw or len(sw) % 2:
        raise InvalidSwitch("switch must be a non-empty even set of edges")
    if k is not None and len(sw) > 2 * k:
        raise InvalidSwitch(f"switch of {len(sw)} edges exceeds 2k = {2 * k}")
    if not sw <= g.edges:
        raise InvalidSwitch(f"edges not in graph: {sorted(sw - g.edges)[:4]}")
    new = frozenset(state) ^ sw
    return new if in_target(g, new, target) else None


@dataclass
class Proposal:
    step: int
    switch: tuple[Edge, ...] | None
    accepted: bool

    def as_dict(self) -> dict:
        return {"step": self.step, "L": None if self.switch is None else [list(e) for e in self.switch], "accepted": self.accepted}


@dataclass
class Trajectory:
    start: frozenset[Edge]
    proposals: list[Proposal] = field(default_factory=list)
    final: frozenset[Edge] | None = None

    def replay(self, g: Graph, target: str) -> frozenset[Edge]:
        state = self.start
        for p in self.proposals:
            if p.accepted:
                nxt = apply_switch(state, p.switch, g, target)
                if nxt is None:
                    raise GraphError(f"replay left the target class at step {p.step}")
                state = nxt
        return state

    @property
    def acceptance_rate(self) -> float:
        if not self.proposals:
            return 0.0
        return sum(p.accepted for p in self.proposals) / len(self.proposals)

    def as_dict(self) -> dict:
        return {
            "start": [list(e) for e in sorted(self.start)],
            "proposals": [p.as_dict() for p in self.proposals],
            "final": None if self.final is None else [list(e) for e in sorted(self.final)],
        }


class SwitchChain:
    """Seeded k-switch chain on a fixed graph.

    Each non-lazy step picks ell uniformly from 1..k and a uniformly random
    2*ell-subset L of E(G) (partial Fisher-Yates over edge indices), moving to
    ``state △ L`` when that stays in the target class.
    """

    def __init__(self, g: Graph, cfg: ChainConfig, rng: np.random.Generator | None = None):
        self.g = g
        self.cfg = cfg
        self.rng = rng if rng is not None else np.random.default_rng(cfg.seed)
        self._edges = g.edge_list
        self._perm = list(range(len(self._edges)))

    def propose(self) -> tuple[Edge, ...] | None:
        cfg, rng = self.cfg, self.rng
        if cfg.lazy and rng.random() < 0.5:
            return None
        ell = int(rng.integers(1, cfg.k + 1))
        m = len(self._edges)
        if 2 * ell > m:
            return None
        perm = self._perm
        for i in range(2 * ell):
            j = i + int(rng.integers(m - i))
            perm[i], perm[j] = perm[j], perm[i]
        return tuple(sorted(self._edges[perm[i]] for i in range(2 * ell)))

    def step(self, state, index: int = 0) -> tuple[frozenset[Edge], Proposal]:
        sw = self.propose()
        if sw is None:
            return state, Proposal(index, None, False)
        new = apply_switch(state, sw, self.g, self.cfg.target)
        if new is None:
            return state, Proposal(index, sw, False)
        return new, Proposal(index, sw, True)

    def run(self, start, steps: int) -> Trajectory:
        state = frozenset(start)
        if not in_target(self.g, state, self.cfg.target):
            raise GraphError("start state is not in the target class")
        traj = Trajectory(state)
        for t in range(steps):
            state, rec = self.step(state, t)
            traj.proposals.append(rec)
        traj.final = state
        return traj


def step(state, cfg: ChainConfig, g: Graph, rng: np.random.Generator):
    """One transition from ``state`` drawing randomness from ``rng``."""
    return SwitchChain(g, cfg, rng).step(frozenset(state))


def transition_probability(x, y, cfg: ChainConfig, g: Graph) -> Fraction:
    """Exact P(x, y) for distinct states ``x``, ``y`` of the target class."""
    d = len(frozenset(x) ^ frozenset(y))
    if d == 0:
        raise ValueError("transition_probability is defined for distinct states only")
    if d % 2 or d > 2 * cfg.k or d > g.m:
        return Fraction(0)
    p = Fraction(1, cfg.k) / comb(g.m, d)
    return p / 2 if cfg.lazy else p


class Theta(NamedTuple):
    value: Fraction
    ell: int
    clipped: bool


def theta(cfg: ChainConfig, g: Graph) -> Theta:
    """Smallest positive probability of proposing one particular switch.

    This is (1/k) / C(m, 2*ell) maximised over the attainable sizes ell,
    halved for the lazy chain. ``clipped`` is set when m < 2k, so that the
    largest sizes cannot be proposed at all.
    """
    m = g.m
    top = min(cfg.k, m // 2)
    if top < 1:
        raise ValueError("graph has fewer than two edges")
    ell = max(range(1, top + 1), key=lambda e: (comb(m, 2 * e), e))
    p = Fraction(1, cfg.k) / comb(m, 2 * ell)
    return Theta(p / 2 if cfg.lazy else p, ell, top < cfg.k)
