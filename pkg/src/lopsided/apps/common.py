"""Shared plumbing for the application encoders."""

from __future__ import annotations

import hashlib
from collections import defaultdict
from dataclasses import dataclass, field

from ..core import BadEvent, ContractError, event_holds, make_event
from ..criteria import (CriterionInput, check_cluster_expansion, check_symmetric,
                        uniform_cluster_feasible, uniform_cluster_root)
from ..engine import BadEventChecker, Problem


@dataclass
class Certificate:
    """Outcome of the criterion check an encoder performs."""

    criterion: str  # "symmetric", "cluster-uniform" or "occurrence"
    satisfied: bool
    epsilon: float
    w_bound: float | None
    params: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {"criterion": self.criterion, "satisfied": self.satisfied,
                "epsilon": self.epsilon, "W_bound": self.w_bound, "params": self.params}


def symmetric_certificate(p: float, d: int, m: int, epsilon: float, **extra) -> Certificate:
    ok, w = check_symmetric(p, d, m, epsilon)
    return Certificate("symmetric", ok, epsilon, w, {"p": p, "d": d, "m": m, **extra})


def cluster_certificate(p: float, c: float, r: int, m: int, epsilon: float,
                        **extra) -> Certificate:
    """Uniform weights ``alpha`` on every event, neighbourhoods covered by r cliques of size c."""
    if m == 0:
        return Certificate("cluster-uniform", True, epsilon, 0.0,
                           {"p": p, "c": c, "r": r, "m": 0, "alpha": 0.0, **extra})
    ok = uniform_cluster_feasible(p, c, r, epsilon)
    alpha = uniform_cluster_root(p, c, r, epsilon) if ok else None
    w = m * alpha if ok else None
    return Certificate("cluster-uniform", ok, epsilon, w,
                       {"p": p, "c": c, "r": r, "m": m, "alpha": alpha, **extra})


def event_id(key) -> int:
    """Stable 63-bit id for a lazily generated event."""
    h = hashlib.blake2b(repr(key).encode(), digest_size=8).digest()
    return int.from_bytes(h, "big") & ((1 << 63) - 1)


class LazyChecker(BadEventChecker):
    """Checker whose events are created on first sight and cached by hash id."""

    def __init__(self, space, finder):
        self.space = space
        self.finder = finder  # state -> iterable of atom tuples
        self.cache: dict = {}

    def register(self, atoms) -> int:
        atoms = tuple(sorted(atoms))
        eid = event_id(atoms)
        known = self.cache.get(eid)
        if known is None:
            self.cache[eid] = make_event(self.space, atoms, eid)
        elif known.atoms != atoms:
            raise ContractError(f"event id collision for {atoms!r}")
        return eid

    def list_true(self, state):
        return sorted({self.register(a) for a in self.finder(state)})

    def event(self, eid):
        return self.cache[eid]


class IndexedChecker(BadEventChecker):
    """Checker over an explicit event list with an app-specific finder."""

    def __init__(self, events, finder):
        self.events = events
        self.finder = finder  # state -> iterable of event ids

    def list_true(self, state):
        return sorted(set(self.finder(state)))

    def event(self, eid):
        return self.events[eid]


class LookupChecker(BadEventChecker):
    """Checker over an explicit event list; the finder yields atom tuples."""

    def __init__(self, events, finder):
        self.events = events
        self.finder = finder
        self.lookup = {b.atoms: b.id for b in events}

    def list_true(self, state):
        lookup = self.lookup
        return sorted({lookup[tuple(sorted(a))] for a in self.finder(state)})

    def event(self, eid):
        return self.events[eid]


def all_events(problem: Problem) -> list:
    if problem.events is not None:
        return problem.events
    if problem.enumerate_events is None:
        raise ContractError("problem cannot enumerate its events")
    return list(problem.enumerate_events())


def verify_solution(problem: Problem, state) -> bool:
    """No bad event holds (checker and, when possible, a full scan) and the app check passes."""
    space = problem.space
    try:
        space.check_state(state)
    except ContractError:
        return False
    if problem.checker.list_true(state):
        return False
    if problem.events is not None:
        if any(event_holds(space, state, b) for b in problem.events):
            return False
    if problem.semantic_check is not None and not problem.semantic_check(state):
        return False
    return True


def key_adjacency(space, events) -> list:
    """Events are neighbours when they share an atom key (a supergraph of dependence)."""
    index = defaultdict(set)
    keys = []
    for i, b in enumerate(events):
        ks = {k for a in b.atoms for k in space.atom_keys(a)}
        keys.append(ks)
        for k in ks:
            index[k].add(i)
    return [set().union(*(index[k] for k in ks)) | {i} for i, ks in enumerate(keys)]


def criterion_input(problem: Problem, epsilon: float) -> tuple:
    """``(CriterionInput, events)`` built from exact probabilities and key adjacency."""
    evs = all_events(problem)
    pos = {b.id: i for i, b in enumerate(evs)}
    if len(pos) != len(evs):
        raise ContractError("duplicate event ids")
    probs = [float(problem.space.event_probability(b.atoms)) for b in evs]
    adj = key_adjacency(problem.space, evs)
    return CriterionInput(probs, adj, epsilon), evs


def recheck_certificate(problem: Problem, cert: Certificate | None = None) -> bool:
    """Re-derive the certificate's verdict from the instance itself.

    Returns True when the instance-level criterion agrees with a satisfied
    certificate (an unsatisfied certificate makes no claim).
    """
    cert = problem.certificate if cert is None else cert
    if not cert.satisfied:
        return True
    if cert.criterion == "occurrence":
        if cert.params.get("isolated"):
            inp, evs = criterion_input(problem, cert.epsilon)
            return all(len(a) == 1 for a in inp.adj) and all(
                p * (1 + cert.epsilon) < 1 for p in inp.probs)
        return cert.params["max_occurrence"] <= cert.params["L"]
    inp, evs = criterion_input(problem, cert.epsilon)
    if not evs:
        return True
    if cert.criterion == "symmetric":
        p = max(inp.probs)
        d = max(len(a) for a in inp.adj)
        if p > cert.params["p"] * (1 + 1e-12) or d > cert.params["d"]:
            return False
        return check_symmetric(p, d, inp.m, cert.epsilon)[0]
    if cert.criterion == "cluster-uniform":
        alpha = cert.params["alpha"]
        return check_cluster_expansion(inp, [alpha] * inp.m)[0]
    raise ContractError(f"unknown criterion {cert.criterion!r}")


def intern_labels(labels) -> tuple:
    """Map hashable labels to dense ints in order of first appearance."""
    table: dict = {}
    out = []
    for lab in labels:
        out.append(table.setdefault(lab, len(table)))
    return out, table


def make_events(space, atom_lists) -> list:
    return [make_event(space, atoms, i) for i, atoms in enumerate(atom_lists)]


def explicit_problem(space, atom_lists, atom_finder, **kw) -> Problem:
    events = make_events(space, atom_lists)
    return Problem(space, LookupChecker(events, atom_finder), len(events), events, **kw)


__all__ = [
    "BadEvent", "Certificate", "IndexedChecker", "LazyChecker", "LookupChecker", "all_events",
    "cluster_certificate", "criterion_input", "event_id", "explicit_problem",
    "intern_labels", "key_adjacency", "make_events", "recheck_certificate",
    "symmetric_certificate", "verify_solution",
]
