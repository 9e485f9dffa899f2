"""Encoders over independent variables: k-SAT and hypergraph coloring."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..core import ContractError
from ..engine import Problem
from ..spaces import VariableSpace
from .common import Certificate, IndexedChecker, make_events


@dataclass
class CnfInstance:
    """``clauses`` hold nonzero signed variable indices, 1-based as in DIMACS."""

    nvars: int
    clauses: list

    def __post_init__(self):
        clean = []
        for ci, cl in enumerate(self.clauses):
            lits = tuple(int(x) for x in cl)
            if any(x == 0 or abs(x) > self.nvars for x in lits):
                raise ContractError(f"clause {ci}: literal out of range")
            if len(set(lits)) != len(lits):
                raise ContractError(f"clause {ci}: duplicate literal")
            clean.append(lits)
        self.clauses = clean

    @property
    def width(self) -> int:
        ks = {len(c) for c in self.clauses}
        if len(ks) > 1:
            raise ContractError(f"clauses have mixed widths {sorted(ks)}")
        return ks.pop() if ks else 0

    def occurrences(self) -> Counter:
        return Counter(abs(x) for c in self.clauses for x in c)

    def satisfied_by(self, values) -> bool:
        """``values[v-1]`` is 1 for true."""
        return all(any((values[abs(x) - 1] == 1) == (x > 0) for x in c) for c in self.clauses)


def ksat_occurrence_bound(k: int, epsilon: float = 0.0) -> float:
    return 2 ** (k + 1) * (1 - 1 / k) ** k / ((k - 1) * (1 + epsilon)) - 2 / k


def ksat_mu(k: int, epsilon: float = 0.0) -> float:
    return (1 + epsilon) / (2 - 2 / k) ** k


def _numpy_finder(vars_: np.ndarray, vals: np.ndarray, stride: int = 1, colors=None):
    def finder(state):
        if len(vars_) == 0:
            return []
        arr = np.asarray(state, dtype=np.int64)
        got = arr[vars_]
        if colors is None:
            hit = np.all(got == vals, axis=1)
            return np.flatnonzero(hit).tolist()
        mono = np.all(got == got[:, :1], axis=1)
        idx = np.flatnonzero(mono)
        return (idx * stride + got[idx, 0]).tolist()
    return finder


def build_ksat(cnf: CnfInstance, epsilon: float = 0.0) -> Problem:
    """One bad event per non-tautological clause; uniform marginals."""
    k = cnf.width
    if cnf.clauses and k < 2:
        raise ContractError("k-SAT needs clause width >= 2")
    space = VariableSpace.uniform(cnf.nvars, 2)
    kept = [c for c in cnf.clauses if not any(-x in c for x in c)]
    atoms = [[(abs(x) - 1, 0 if x > 0 else 1) for x in c] for c in kept]
    events = make_events(space, atoms)
    vars_ = np.array([[a for a, _ in ev] for ev in atoms], dtype=np.int64).reshape(len(atoms), k)
    vals = np.array([[b for _, b in ev] for ev in atoms], dtype=np.int64).reshape(len(atoms), k)
    occ = cnf.occurrences()
    max_occ = max(occ.values(), default=0)
    L = ksat_occurrence_bound(k, epsilon) if k >= 2 else float("inf")
    mu = ksat_mu(k, epsilon) if k >= 2 else 0.0
    # Clauses sharing no variable are isolated events: any p(1+eps) < 1 is fine.
    isolated = max_occ <= 1 and 2.0 ** -k * (1 + epsilon) < 1
    cert = Certificate("occurrence", max_occ <= L or isolated, epsilon, len(events) * mu,
                       {"k": k, "L": L, "max_occurrence": max_occ, "mu": mu,
                        "isolated": isolated})
    problem = Problem(space, IndexedChecker(events, _numpy_finder(vars_, vals)), len(events),
                      events, name="sat", certificate=cert,
                      semantic_check=cnf.satisfied_by, info={"cnf": cnf})
    return problem


@dataclass
class Hypergraph:
    n: int
    edges: list

    def __post_init__(self):
        clean = []
        for i, e in enumerate(self.edges):
            e = tuple(int(v) for v in e)
            if len(set(e)) != len(e):
                raise ContractError(f"edge {i}: repeated vertex")
            if any(not 0 <= v < self.n for v in e):
                raise ContractError(f"edge {i}: vertex out of range")
            clean.append(e)
        self.edges = clean

    @property
    def rank(self) -> int:
        ks = {len(e) for e in self.edges}
        if len(ks) > 1:
            raise ContractError(f"edges have mixed sizes {sorted(ks)}")
        return ks.pop() if ks else 0

    def max_degree(self) -> int:
        return max(Counter(v for e in self.edges for v in e).values(), default=0)


def hypercolor_occurrence_bound(k: int, c: int, epsilon: float = 0.0) -> float:
    return c ** k * (1 - 1 / k) ** (k - 1) / (k * (c - 1) * (1 + epsilon))


def build_hypergraph_coloring(h: Hypergraph, c: int, epsilon: float = 0.0) -> Problem:
    """Bad event ``edge i all colored j`` has id ``i * c + j``."""
    if c < 2:
        raise ContractError("need at least two colors")
    k = h.rank
    space = VariableSpace.uniform(h.n, c)
    atoms = [[(v, j) for v in e] for e in h.edges for j in range(c)]
    events = make_events(space, atoms)
    vars_ = np.array(h.edges, dtype=np.int64).reshape(len(h.edges), k)
    finder = _numpy_finder(vars_, None, stride=c, colors=c)
    max_deg = h.max_degree()
    if k >= 2:
        L = hypercolor_occurrence_bound(k, c, epsilon)
    else:
        L = 0.0 if h.edges else float("inf")
    cert = Certificate("occurrence", max_deg <= L, epsilon, None,
                       {"k": k, "c": c, "L": L, "max_occurrence": max_deg})

    def proper(state):
        return all(len({state[v] for v in e}) > 1 for e in h.edges)

    return Problem(space, IndexedChecker(events, finder), len(events), events,
                   name="hypercolor", certificate=cert, semantic_check=proper,
                   info={"hypergraph": h, "colors": c})
