"""Lexicographically-first maximal independent sets of digraphs.

Scanning vertices in a given order, a vertex joins the set unless an earlier
member has an edge into it.  ``lfmis_sequential`` is the reference scan;
``lfmis_parallel`` computes the same set in rounds, each round taking every
surviving vertex with no surviving earlier in-neighbour.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import ContractError
from .rng import as_streams


@dataclass(frozen=True)
class Digraph:
    """Simple digraph on ``range(n)`` held as parallel edge arrays."""

    n: int
    src: np.ndarray
    dst: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Digraph":
        arr = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
        return cls.from_arrays(n, arr[:, 0], arr[:, 1])

    @classmethod
    def from_arrays(cls, n: int, src, dst) -> "Digraph":
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if src.shape != dst.shape:
            raise ContractError("edge arrays differ in length")
        if len(src) and (src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n):
            raise ContractError("edge endpoint out of range")
        if np.any(src == dst):
            raise ContractError("self-loops are not allowed")
        if len(src):
            packed = np.unique(src * n + dst)
            src, dst = packed // n, packed % n
        return cls(n, src, dst)

    @classmethod
    def from_undirected(cls, n: int, edges: Iterable) -> "Digraph":
        pairs = [(u, v) for u, v in edges] + [(v, u) for u, v in edges]
        return cls.from_edges(n, pairs)

    @property
    def edges(self) -> list:
        return list(zip(self.src.tolist(), self.dst.tolist()))

    def out_lists(self) -> list:
        out = [[] for _ in range(self.n)]
        for u, v in zip(self.src.tolist(), self.dst.tolist()):
            out[u].append(v)
        return out


def _check_order(n: int, order: Sequence) -> list:
    order = list(order)
    if sorted(order) != list(range(n)):
        raise ContractError("order must be a permutation of the vertices")
    return order


def lfmis_sequential(g: Digraph, order: Sequence | None = None) -> set:
    """Scan ``order`` (vertices, first to last); keep alive ones, kill their out-neighbours."""
    order = list(range(g.n)) if order is None else _check_order(g.n, order)
    out = g.out_lists()
    alive = [True] * g.n
    chosen = set()
    for v in order:
        if alive[v]:
            chosen.add(v)
            for w in out[v]:
                alive[w] = False
    return chosen


def lfmis_parallel(g: Digraph, order: Sequence | None = None) -> tuple:
    """Round-based LFMIS; returns ``(set, rounds)``.

    Only edges pointing forward in the order can ever kill a vertex, so the
    rest are dropped up front.
    """
    order = list(range(g.n)) if order is None else _check_order(g.n, order)
    if g.n == 0:
        return set(), 0
    rank = np.empty(g.n, dtype=np.int64)
    rank[np.asarray(order, dtype=np.int64)] = np.arange(g.n)
    fwd = rank[g.src] < rank[g.dst]
    src, dst = g.src[fwd], g.dst[fwd]
    alive = np.ones(g.n, dtype=bool)
    chosen = np.zeros(g.n, dtype=bool)
    rounds = 0
    while alive.any():
        rounds += 1
        keep = alive[src] & alive[dst]
        src, dst = src[keep], dst[keep]
        blocked = np.zeros(g.n, dtype=bool)
        blocked[dst] = True
        take = alive & ~blocked
        chosen |= take
        alive &= ~take
        alive[dst[take[src]]] = False
    return set(np.flatnonzero(chosen).tolist()), rounds


def random_digraph(n: int, edge_prob: float, rnd: np.random.Generator) -> Digraph:
    """Each ordered pair is an edge with probability ``edge_prob``.

    Large graphs are drawn by sampling the edge count and then endpoints with
    replacement, which slightly undercounts after de-duplication.
    """
    if not 0 <= edge_prob <= 1:
        raise ContractError("edge_prob must lie in [0, 1]")
    pairs = n * (n - 1)
    if pairs == 0 or edge_prob == 0:
        return Digraph.from_arrays(n, [], [])
    if n <= 2048:
        mask = rnd.random((n, n)) < edge_prob
        np.fill_diagonal(mask, False)
        src, dst = np.nonzero(mask)
        return Digraph.from_arrays(n, src, dst)
    m = int(rnd.binomial(pairs, edge_prob))
    src = rnd.integers(0, n, size=m)
    off = rnd.integers(1, n, size=m)
    return Digraph.from_arrays(n, src, (src + off) % n)


def lfmis_round_stats(n: int, edge_prob: float, trials: int, rng=None) -> dict:
    """Parallel round counts on random digraphs under random orders."""
    if n < 1:
        raise ContractError("n must be positive")
    streams = as_streams(rng)
    rounds = []
    for t in range(trials):
        gen = np.random.default_rng(streams.get("lfmis", n, t).getrandbits(64))
        g = random_digraph(n, edge_prob, gen)
        order = gen.permutation(n)
        _, r = lfmis_parallel(g, order.tolist())
        rounds.append(r)
    return {
        "n": n,
        "edge_prob": edge_prob,
        "trials": trials,
        "rounds": rounds,
        "median": statistics.median(rounds) if rounds else 0,
        "max": max(rounds, default=0),
        "mean": statistics.fmean(rounds) if rounds else 0.0,
    }
