"""Seeded random instance generators used by tests, benchmarks and the CLI examples."""

from __future__ import annotations

import itertools
import random

from ..core import ContractError
from .permutations import BlockPartition, ColorMatrix, PackingInstance
from .rainbow import EdgeColoring
from .variables import CnfInstance, Hypergraph


def _rnd(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _equal_classes(items: list, delta: int, rnd: random.Random) -> list:
    """Color ``items`` so every class has exactly ``delta`` members (the last may be short)."""
    if delta < 1:
        raise ContractError("delta must be at least 1")
    items = list(items)
    rnd.shuffle(items)
    return [(x, i // delta) for i, x in enumerate(items)]


def random_color_matrix(n: int, delta: int, seed=None) -> ColorMatrix:
    rnd = _rnd(seed)
    cells = [(i, j) for i in range(n) for j in range(n)]
    grid = [[0] * n for _ in range(n)]
    for (i, j), c in _equal_classes(cells, delta, rnd):
        grid[i][j] = c
    return ColorMatrix(grid)


def random_edge_coloring(n: int, delta: int, s: int = 2, seed=None) -> EdgeColoring:
    rnd = _rnd(seed)
    edges = list(itertools.combinations(range(n), s))
    return EdgeColoring(n, dict(_equal_classes(edges, delta, rnd)), s)


def random_ksat(nvars: int, m: int, k: int, max_occurrence: int | None = None,
                seed=None) -> CnfInstance:
    """Random k-CNF; with a cap, each variable is used at most ``max_occurrence`` times."""
    rnd = _rnd(seed)
    if k > nvars:
        raise ContractError("clause width exceeds the number of variables")
    if max_occurrence is not None and m * k > nvars * max_occurrence:
        raise ContractError("occurrence cap too small for the requested clause count")
    if max_occurrence is None:
        rows = [rnd.sample(range(nvars), k) for _ in range(m)]
    else:
        rows = _capped_rows(nvars, m, k, max_occurrence, rnd)
    clauses = [[(v + 1) * rnd.choice((1, -1)) for v in vs] for vs in rows]
    return CnfInstance(nvars, clauses)


def _capped_rows(nvars: int, m: int, k: int, cap: int, rnd: random.Random) -> list:
    # Configuration model: shuffle the variable slots, cut into rows, then
    # repair repeated variables by swapping with random slots elsewhere.
    slots = [v for v in range(nvars) for _ in range(cap)]
    rnd.shuffle(slots)
    slots = slots[:m * k]
    rows = [slots[i * k:(i + 1) * k] for i in range(m)]
    for _ in range(100):
        bad = [(r, j) for r, row in enumerate(rows) for j in range(k) if row[j] in row[:j]]
        if not bad:
            return rows
        for r, j in bad:
            r2, j2 = rnd.randrange(m), rnd.randrange(k)
            a, b = rows[r][j], rows[r2][j2]
            if r2 != r and a not in rows[r2] and b not in rows[r]:
                rows[r][j], rows[r2][j2] = b, a
    raise ContractError("could not place clauses under the occurrence cap")


def random_hypergraph(n: int, m: int, k: int, max_degree: int | None = None,
                      seed=None) -> Hypergraph:
    cnf = random_ksat(n, m, k, max_degree, seed)
    return Hypergraph(n, [[abs(x) - 1 for x in c] for c in cnf.clauses])


def random_block_graph(blocks: int, b: int, max_degree: int, edges: int,
                       seed=None) -> BlockPartition:
    """Random graph with consecutive blocks of size ``b`` and degree at most ``max_degree``."""
    rnd = _rnd(seed)
    n = blocks * b
    deg = [0] * n
    got = set()
    tries = 0
    while len(got) < edges and tries < 50 * edges + 100:
        tries += 1
        u, v = rnd.randrange(n), rnd.randrange(n)
        e = (min(u, v), max(u, v))
        if u == v or e in got or deg[u] >= max_degree or deg[v] >= max_degree:
            continue
        got.add(e)
        deg[u] += 1
        deg[v] += 1
    return BlockPartition(n, [range(i * b, (i + 1) * b) for i in range(blocks)], sorted(got))


def random_packing(n: int, s: int, m1: int, m2: int, seed=None) -> PackingInstance:
    rnd = _rnd(seed)

    def edges(m):
        out = set()
        while len(out) < m:
            out.add(tuple(sorted(rnd.sample(range(n), s))))
        return sorted(out)

    return PackingInstance(n, s, edges(m1), edges(m2))
