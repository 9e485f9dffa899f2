"""Rainbow perfect matchings and Hamiltonian cycles of edge-colored complete (hyper)graphs."""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass

from ..core import ContractError
from ..engine import Problem
from ..spaces import HamCycleSpace, MatchingSpace
from .common import cluster_certificate, explicit_problem, intern_labels


@dataclass
class EdgeColoring:
    """Coloring of every s-subset of ``range(n)``; labels are interned to ints."""

    n: int
    colors: dict  # sorted vertex tuple -> label
    s: int = 2
    labels: dict | None = None

    def __post_init__(self):
        if self.s < 2:
            raise ContractError("edges need at least two vertices")
        clean = {}
        for e, lab in self.colors.items():
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.s or len(set(e)) != self.s:
                raise ContractError(f"edge {e} is not an {self.s}-set")
            if any(not 0 <= v < self.n for v in e):
                raise ContractError(f"edge {e} has a vertex outside range({self.n})")
            if e in clean and clean[e] != lab:
                raise ContractError(f"edge {e} colored twice")
            clean[e] = lab
        want = math.comb(self.n, self.s)
        if len(clean) != want:
            raise ContractError(f"{len(clean)} of {want} edges colored; every edge needs a color")
        keys = sorted(clean)
        ids, table = intern_labels(clean[e] for e in keys)
        self.colors = dict(zip(keys, ids))
        if self.labels is None:
            self.labels = table

    def classes(self) -> dict:
        out = defaultdict(list)
        for e, c in self.colors.items():
            out[c].append(e)
        return out

    def max_multiplicity(self) -> int:
        return max((len(v) for v in self.classes().values()), default=0)

    def color(self, *vertices) -> int:
        return self.colors[tuple(sorted(vertices))]


def _matching_pairs(coloring: EdgeColoring) -> list:
    return [(e, f) for cls in coloring.classes().values()
            for e, f in itertools.combinations(cls, 2) if set(e).isdisjoint(f)]


def _matching_problem(coloring: EdgeColoring, name: str, cert) -> Problem:
    space = MatchingSpace(coloring.n, coloring.s)
    colors = coloring.colors

    def hits(state):
        got = defaultdict(list)
        for e in state.edges():
            got[colors[e]].append(e)
        return got

    def finder(state):
        for es in hits(state).values():
            yield from itertools.combinations(es, 2)

    def rainbow(state):
        return all(len(es) < 2 for es in hits(state).values())

    return explicit_problem(space, _matching_pairs(coloring), finder, name=name,
                            certificate=cert, semantic_check=rainbow,
                            info={"coloring": coloring})


def build_rainbow_matching_kn(coloring: EdgeColoring, epsilon: float = 0.0) -> Problem:
    """Perfect matching of K_n using each color at most once."""
    n = coloring.n
    if coloring.s != 2:
        raise ContractError("expected a coloring of graph edges")
    if n % 2:
        raise ContractError(f"K_{n} has no perfect matching (n is odd)")
    delta = coloring.max_multiplicity()
    m = len(_matching_pairs(coloring))
    p = 1 / ((n - 1) * (n - 3)) if n >= 4 else 0.0
    cert = cluster_certificate(p, (n - 1) * max(delta - 1, 0), 4, m, epsilon, delta=delta)
    return _matching_problem(coloring, "rainbow-matching", cert)


def kns_event_probability(n: int, s: int) -> float:
    """Chance that two fixed disjoint s-edges both lie in a uniform perfect matching."""
    return (n / s) * (n / s - 1) / (math.comb(n, s) * math.comb(n - s, s))


def kns_delta_bound(n: int, s: int) -> float:
    return math.comb(n - s - 1, s - 1) * (1 - 1 / (2 * s)) ** (2 * s) / (2 * s - 1)


def build_rainbow_matching_kns(coloring: EdgeColoring, s: int | None = None,
                               epsilon: float = 0.0) -> Problem:
    """Rainbow perfect matching of the complete s-uniform hypergraph."""
    s = coloring.s if s is None else s
    if s != coloring.s:
        raise ContractError(f"coloring has edge size {coloring.s}, not {s}")
    n = coloring.n
    if n % s:
        raise ContractError(f"{s} does not divide n={n}")
    delta = coloring.max_multiplicity()
    m = len(_matching_pairs(coloring))
    p = kns_event_probability(n, s) if n >= 2 * s else 0.0
    cert = cluster_certificate(p, math.comb(n - 1, s - 1) * max(delta - 1, 0), 2 * s, m,
                               epsilon, delta=delta, delta_bound=kns_delta_bound(n, s))
    return _matching_problem(coloring, "rainbow-hypermatching", cert)


def _ham_atom_lists(coloring: EdgeColoring) -> list:
    out = []
    for cls in coloring.classes().values():
        for e, f in itertools.combinations(cls, 2):
            common = set(e) & set(f)
            if common:
                (v,) = common
                u = e[0] if e[1] == v else e[1]
                w = f[0] if f[1] == v else f[1]
                out.append([(u, v, w)])
                out.append([(w, v, u)])
            else:
                a, b = e
                c, d = f
                for x in ((a, b), (b, a)):
                    for y in ((c, d), (d, c)):
                        out.append([x, y])
    return out


def build_rainbow_hamcycle(coloring: EdgeColoring, epsilon: float = 0.0) -> Problem:
    """Hamiltonian cycle of K_n using each color at most once."""
    n = coloring.n
    if coloring.s != 2:
        raise ContractError("expected a coloring of graph edges")
    if n < 3:
        raise ContractError("need n >= 3 for a Hamiltonian cycle")
    space = HamCycleSpace(n)
    colors = coloring.colors
    atom_lists = _ham_atom_lists(coloring)
    delta = coloring.max_multiplicity()
    p = 1 / ((n - 1) * (n - 2))

    def hits(state):
        got = defaultdict(list)
        for x in range(n):
            y = state[x]
            got[colors[(min(x, y), max(x, y))]].append((x, y))
        return got

    def finder(state):
        for arcs in hits(state).values():
            for (a, b), (c, d) in itertools.combinations(arcs, 2):
                if b == c:
                    yield ((a, b, d),)
                elif d == a:
                    yield ((c, d, b),)
                else:
                    yield ((a, b), (c, d))

    def rainbow(state):
        return all(len(arcs) < 2 for arcs in hits(state).values())

    cert = cluster_certificate(p, 4 * (n - 1) * max(delta - 1, 0), 4, len(atom_lists), epsilon,
                               delta=delta)
    return explicit_problem(space, atom_lists, finder, name="rainbow-hamcycle",
                            certificate=cert, semantic_check=rainbow,
                            info={"coloring": coloring})
