"""Encoders over permutations: transversals, packing and strong coloring."""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass

from ..core import ContractError, make_event
from ..engine import BadEventChecker, Problem
from ..spaces import PermutationSpace, ProductSpace
from .common import (LazyChecker, cluster_certificate, explicit_problem, intern_labels,
                     symmetric_certificate)

EVENT_BUDGET = 5_000_000


@dataclass
class ColorMatrix:
    """Square matrix of color labels, interned to dense ints."""

    colors: list  # colors[i][j]
    labels: dict | None = None

    def __post_init__(self):
        n = len(self.colors)
        if any(len(row) != n for row in self.colors):
            raise ContractError("color matrix must be square")
        flat, table = intern_labels(lab for row in self.colors for lab in row)
        self.colors = [flat[i * n:(i + 1) * n] for i in range(n)]
        if self.labels is None:
            self.labels = table

    @property
    def n(self) -> int:
        return len(self.colors)

    def cells_by_color(self) -> dict:
        out = defaultdict(list)
        for i, row in enumerate(self.colors):
            for j, c in enumerate(row):
                out[c].append((i, j))
        return out

    def max_multiplicity(self) -> int:
        return max((len(v) for v in self.cells_by_color().values()), default=0)


def transversal_delta_cap(n: int, s: int, epsilon: float = 0.0) -> float:
    """Largest color multiplicity allowed by the symmetric bound for ``s >= 3``."""
    return n * (math.factorial(s - 1) / (2 * math.e * (1 + epsilon) * s)) ** (1 / (s - 1))


def _independent_tuple(cells) -> bool:
    rows = {i for i, _ in cells}
    cols = {j for _, j in cells}
    return len(rows) == len(cells) == len(cols)


def build_transversal(matrix: ColorMatrix, s: int = 2, epsilon: float = 0.0) -> Problem:
    """Avoid any color appearing ``s`` or more times among the chosen cells."""
    if s < 2:
        raise ContractError("s must be at least 2")
    n = matrix.n
    space = PermutationSpace(n)
    by_color = matrix.cells_by_color()
    delta = matrix.max_multiplicity()
    colors = matrix.colors

    def hits(state):
        got = defaultdict(list)
        for i, j in enumerate(state.fwd):
            got[colors[i][j]].append((i, j))
        return got

    def finder(state):
        for cells in hits(state).values():
            if len(cells) >= s:
                yield from itertools.combinations(cells, s)

    def rainbow(state):
        return all(len(c) < s for c in hits(state).values())

    if s == 2:
        count = sum(math.comb(len(c), 2) for c in by_color.values())
        if count > EVENT_BUDGET:
            raise ContractError(f"{count} same-color cell pairs exceeds the budget "
                                f"of {EVENT_BUDGET} explicit events")
        atoms = [pair for cells in by_color.values()
                 for pair in itertools.combinations(cells, 2) if _independent_tuple(pair)]
        p = 1 / (n * (n - 1)) if n > 1 else 0.0
        cert = cluster_certificate(p, n * max(delta - 1, 0), 4, len(atoms), epsilon,
                                   delta=delta, delta_cap=1 + 27 * (n - 1) / 256)
        return explicit_problem(space, atoms, finder, name="transversal",
                                certificate=cert, semantic_check=rainbow,
                                info={"matrix": matrix, "s": s})

    count = sum(math.comb(len(c), s) for c in by_color.values())
    p = math.factorial(n - s) / math.factorial(n)
    d = 2 * s * n * math.comb(max(delta - 1, 0), s - 1)
    cert = symmetric_certificate(p, d, count, epsilon, delta=delta,
                                 delta_cap=transversal_delta_cap(n, s, epsilon))

    def enumerate_events():
        k = 0
        for cells in by_color.values():
            for tup in itertools.combinations(cells, s):
                if _independent_tuple(tup):
                    yield make_event(space, tup, k)
                    k += 1

    return Problem(space, LazyChecker(space, finder), count, None, name="transversal",
                   certificate=cert, semantic_check=rainbow, enumerate_events=enumerate_events,
                   info={"matrix": matrix, "s": s})


@dataclass
class PackingInstance:
    """Two s-uniform hypergraphs placed on ``range(n)``; ``h1`` stays fixed."""

    n: int
    s: int
    h1: list
    h2: list

    def __post_init__(self):
        for name in ("h1", "h2"):
            edges = []
            for e in getattr(self, name):
                e = tuple(sorted(int(v) for v in e))
                if len(e) != self.s or len(set(e)) != self.s:
                    raise ContractError(f"{name}: edge {e} is not an {self.s}-set")
                if any(not 0 <= v < self.n for v in e):
                    raise ContractError(f"{name}: vertex out of range in {e}")
                edges.append(e)
            setattr(self, name, sorted(set(edges)))

    @staticmethod
    def overlap_degree(edges) -> int:
        """Most other edges any single edge meets."""
        at = defaultdict(set)
        for i, e in enumerate(edges):
            for v in e:
                at[v].add(i)
        best = 0
        for i, e in enumerate(edges):
            best = max(best, len(set().union(*(at[v] for v in e))) - 1)
        return best


def build_packing(inst: PackingInstance, epsilon: float = 0.0) -> Problem:
    """Choose a bijection for the second hypergraph so no image edge lands on the first."""
    n, s = inst.n, inst.s
    space = PermutationSpace(n)
    h1set = set(inst.h1)
    m1, m2 = len(inst.h1), len(inst.h2)
    d1, d2 = PackingInstance.overlap_degree(inst.h1), PackingInstance.overlap_degree(inst.h2)
    count = math.factorial(s) * m1 * m2

    def finder(state):
        fwd = state.fwd
        for f2 in inst.h2:
            img = tuple(sorted(fwd[v] for v in f2))
            if img in h1set:
                yield tuple((v, fwd[v]) for v in f2)

    def disjoint(state):
        fwd = state.fwd
        return not any(tuple(sorted(fwd[v] for v in f2)) in h1set for f2 in inst.h2)

    p = math.factorial(n - s) / math.factorial(n)
    d = math.factorial(s) * ((d1 + 1) * m2 + (d2 + 1) * m1)
    cert = symmetric_certificate(p, d, count, epsilon, m1=m1, m2=m2, d1=d1, d2=d2,
                                 lhs=(d1 + 1) * m2 + (d2 + 1) * m1,
                                 rhs=math.comb(n, s) / (math.e * (1 + epsilon)))

    def enumerate_events():
        k = 0
        for f1 in inst.h1:
            for f2 in inst.h2:
                for perm in itertools.permutations(f1):
                    yield make_event(space, zip(f2, perm), k)
                    k += 1

    return Problem(space, LazyChecker(space, finder), count, None, name="pack",
                   certificate=cert, semantic_check=disjoint, enumerate_events=enumerate_events,
                   info={"instance": inst})


@dataclass
class BlockPartition:
    """Graph on ``range(n)`` whose vertices are split into blocks of equal size."""

    n: int
    blocks: list
    edges: list

    def __post_init__(self):
        self.blocks = [tuple(int(v) for v in b) for b in self.blocks]
        seen = sorted(v for b in self.blocks for v in b)
        if seen != list(range(self.n)):
            raise ContractError("blocks must partition the vertices")
        sizes = {len(b) for b in self.blocks}
        if len(sizes) > 1:
            raise ContractError(f"blocks have unequal sizes {sorted(sizes)}")
        edges = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ContractError(f"bad edge ({u}, {v})")
            edges.add((min(u, v), max(u, v)))
        self.edges = sorted(edges)

    @property
    def b(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    def max_degree(self) -> int:
        return max(Counter(v for e in self.edges for v in e).values(), default=0)


class _EdgeColorChecker(BadEventChecker):
    def __init__(self, events, where, cross, b):
        self.events = events
        self.where = where
        self.cross = cross
        self.b = b

    def list_true(self, state):
        out = []
        where = self.where
        for k, (u, v) in enumerate(self.cross):
            bu, iu = where[u]
            bv, iv = where[v]
            c = state[bu].fwd[iu]
            if c == state[bv].fwd[iv]:
                out.append(k * self.b + c)
        return out

    def event(self, eid):
        return self.events[eid]


def build_strong_coloring(part: BlockPartition, epsilon: float = 0.0) -> Problem:
    """Each block gets a uniformly random bijection onto the ``b`` colors."""
    b = part.b
    if b < 2:
        raise ContractError("blocks must have at least two vertices")
    space = ProductSpace([PermutationSpace(b) for _ in part.blocks])
    where = {}
    for bi, blk in enumerate(part.blocks):
        for i, v in enumerate(blk):
            where[v] = (bi, i)
    cross = [(u, v) for u, v in part.edges if where[u][0] != where[v][0]]
    atoms = []
    for u, v in cross:
        (bu, iu), (bv, iv) = where[u], where[v]
        for c in range(b):
            atoms.append([(bu, (iu, c)), (bv, (iv, c))])
    events = [make_event(space, a, k) for k, a in enumerate(atoms)]
    delta = part.max_degree()
    cert = cluster_certificate(1 / b ** 2, b * delta, 4, len(events), epsilon,
                               delta=delta, b_min=256 / 27 * (1 + epsilon) * delta)

    def colors_of(state):
        return [state[where[v][0]].fwd[where[v][1]] for v in range(part.n)]

    def strong(state):
        col = colors_of(state)
        if any(col[u] == col[v] for u, v in part.edges):
            return False
        return all(len({col[v] for v in blk}) == b for blk in part.blocks)

    return Problem(space, _EdgeColorChecker(events, where, cross, b), len(events), events,
                   name="strong-color", certificate=cert, semantic_check=strong,
                   info={"partition": part, "colors_of": colors_of})
