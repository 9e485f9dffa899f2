"""Local-lemma criteria with slack, returning ``(satisfied, W_bound)``.

Adjacency maps each event to its *inclusive* neighbourhood (the event itself
plus everything dependent on it).  Floating comparisons allow a relative
tolerance of 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import ContractError

REL_TOL = 1e-12
SUBSET_CAP = 2 ** 20


def _le(a: float, b: float) -> bool:
    """``a <= b`` up to the relative tolerance."""
    return a <= b or math.isclose(a, b, rel_tol=REL_TOL, abs_tol=0.0)


@dataclass
class CriterionInput:
    """Per-event probabilities, inclusive neighbourhoods and the slack."""

    probs: Sequence
    adjacency: Sequence  # adjacency[i] = iterable of j in N(i), i included or not
    epsilon: float = 0.0

    def __post_init__(self):
        m = len(self.probs)
        if len(self.adjacency) != m:
            raise ContractError("adjacency and probs differ in length")
        self.adj = [frozenset(a) | {i} for i, a in enumerate(self.adjacency)]
        for i, nb in enumerate(self.adj):
            for j in nb:
                if not 0 <= j < m:
                    raise ContractError(f"neighbour {j} of {i} out of range")
                if i not in self.adj[j]:
                    raise ContractError(f"adjacency not symmetric at ({i}, {j})")
        for p in self.probs:
            if not 0 <= p < 1:
                raise ContractError(f"probability {p} outside [0, 1)")
        if self.epsilon < 0:
            raise ContractError("epsilon must be nonnegative")

    @property
    def m(self) -> int:
        return len(self.probs)


def check_symmetric(p: float, d: int, m: int, epsilon: float = 0.0) -> tuple:
    """Symmetric criterion ``e p d (1 + eps) <= 1``; ``d`` is the inclusive degree."""
    if m == 0:
        return True, 0.0
    ok = _le(math.e * p * d * (1 + epsilon), 1.0)
    return ok, math.e * m * p


def check_asymmetric(inp: CriterionInput, x: Sequence) -> tuple:
    if len(x) != inp.m:
        raise ContractError("x must give one value per event")
    for v in x:
        if not 0 <= v < 1:
            raise ContractError(f"x value {v} outside [0, 1)")
    ok = True
    for i, nb in enumerate(inp.adj):
        rhs = float(x[i])
        for j in nb:
            if j != i:
                rhs *= 1 - float(x[j])
        if not _le(float(inp.probs[i]) * (1 + inp.epsilon), rhs):
            ok = False
            break
    w = sum(float(v) / (1 - float(v)) for v in x)
    return ok, w


def independent_subset_sum(nodes: Sequence, adj: Sequence, mu: Sequence,
                           cap: int = SUBSET_CAP) -> float:
    """Sum over independent subsets ``I`` of ``nodes`` of ``prod mu[I]``.

    Two nodes are adjacent when one appears in the other's neighbourhood.
    The recursion branches on the first node (exclude it, or include it and
    drop its neighbours) and memoizes on the remaining node set.
    """
    nodes = tuple(sorted(set(nodes)))
    memo: dict = {}
    visited = [0]

    def rec(rest: frozenset) -> float:
        if not rest:
            return 1.0
        hit = memo.get(rest)
        if hit is not None:
            return hit
        visited[0] += 1
        if visited[0] > cap:
            raise ContractError(
                f"independent-subset enumeration over {len(nodes)} neighbours exceeds {cap}")
        v = min(rest)
        without = rest - {v}
        val = rec(without) + float(mu[v]) * rec(without - adj[v])
        memo[rest] = val
        return val

    return rec(frozenset(nodes))


def check_cluster_expansion(inp: CriterionInput, mu: Sequence) -> tuple:
    """``mu(B) >= P(B)(1+eps) * sum_{I indep in N(B)} prod mu(I)`` for all B."""
    if len(mu) != inp.m:
        raise ContractError("mu must give one value per event")
    if any(v < 0 for v in mu):
        raise ContractError("mu must be nonnegative")
    ok = True
    for i, nb in enumerate(inp.adj):
        s = independent_subset_sum(nb, inp.adj, mu)
        if not _le(float(inp.probs[i]) * (1 + inp.epsilon) * s, float(mu[i])):
            ok = False
            break
    return ok, float(sum(float(v) for v in mu))


# -- scalar certificates ---------------------------------------------------------

def uniform_cluster_feasible(p: float, c: float, r: int, epsilon: float = 0.0) -> bool:
    """Whether ``alpha >= q (1 + c alpha)^r`` has a root, where ``q = p(1+eps)``."""
    if p == 0 or c == 0:
        return True
    if r <= 1:
        return _le(p * (1 + epsilon) * c, 1.0) if r == 1 else True
    bound = ((r - 1) / r) ** r / (r - 1)
    return _le(p * (1 + epsilon) * c, bound)


def uniform_cluster_root(p: float, c: float, r: int, epsilon: float = 0.0) -> float | None:
    """Smallest ``alpha >= 0`` with ``alpha >= p(1+eps)(1+c alpha)^r``, or None."""
    q = p * (1 + epsilon)
    if q == 0:
        return 0.0
    if c == 0:
        return q
    if not uniform_cluster_feasible(p, c, r, epsilon):
        return None

    def f(a):
        return q * (1 + c * a) ** r - a

    lo = 0.0
    hi = 1.0 / (c * (r - 1)) if r > 1 else 1.0 / c
    if f(hi) > 0:
        # Feasible only up to rounding; the tangent point is the root.
        return hi
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return hi


# -- work factor -----------------------------------------------------------------

def work_factor_truncated(inp: CriterionInput, epsilon: float | None = None,
                          size_cap: int = 12, node_budget: int = 2_000_000) -> tuple:
    """Partial sum of the work factor over stable-set sequences of size <= size_cap.

    Sequences are rooted at one event, ``S_0 = {B}``; later layers are
    nonempty independent sets, each inside the union of the neighbourhoods
    of the previous layer.  The size of a sequence is the total number of events and its weight the product of their
    probabilities.  Each is counted with factor ``(1+eps/3)^size``.  Returns
    ``(total, converged)``, where convergence means the largest-size layer
    contributes less than 1e-9 of the total.
    """
    if size_cap < 1:
        raise ContractError("size_cap must be at least 1")
    eps = inp.epsilon if epsilon is None else epsilon
    f = 1 + eps / 3
    q = [float(p) * f for p in inp.probs]
    adj = inp.adj
    m = inp.m
    by_size = [0.0] * (size_cap + 1)
    nodes = [0]

    def indep_subsets(cands: tuple, budget: int):
        # Nonempty independent subsets of cands with at most budget elements.
        def rec(start, chosen, blocked):
            for idx in range(start, len(cands)):
                v = cands[idx]
                if v in blocked:
                    continue
                nxt = chosen + (v,)
                yield nxt
                if len(nxt) < budget:
                    yield from rec(idx + 1, nxt, blocked | adj[v])
        return rec(0, (), frozenset())

    def extend(layer: tuple, size: int, weight: float):
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise ContractError(f"work-factor enumeration exceeds {node_budget} nodes")
        by_size[size] += weight
        if size == size_cap:
            return
        reach = set()
        for v in layer:
            reach |= adj[v]
        cands = tuple(sorted(v for v in reach if q[v] > 0))
        for nxt in indep_subsets(cands, size_cap - size):
            w = weight
            for v in nxt:
                w *= q[v]
            extend(nxt, size + len(nxt), w)

    for v in range(m):
        if q[v] > 0:
            extend((v,), 1, q[v])
    total = sum(by_size)
    if total == 0:
        return 0.0, True
    return total, by_size[size_cap] < 1e-9 * total
