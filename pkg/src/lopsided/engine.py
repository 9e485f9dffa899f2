"""Resampling drivers.

* :func:`run_sequential` resamples the lowest-id true event, one at a time.
* :func:`run_round_sequential` works in rounds: it snapshots the true events,
  draws all their seeds and a random order up front, then scans the order,
  resampling each event still alive and killing the ones that became false
  or depend on the event just resampled.
* :func:`run_parallel` uses the same per-round randomness but decides the
  resampled set up front as the LFMIS of a conflict digraph and applies all of
  it in one batched update.

All randomness comes from keyed streams (see :mod:`lopsided.rng`), so the two
round drivers see identical seeds and orders and produce identical runs on
commutative spaces.
"""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import (BadEvent, ContractError, Space, apply_event_seed, event_holds,
                   events_dependent, sample_event_seed, seed_stays_in)
from .lfmis import Digraph, lfmis_parallel
from .rng import as_streams, shuffled


class BadEventChecker:
    """Lists the ids of the events that hold on a state."""

    def list_true(self, state) -> list:
        raise NotImplementedError

    def event(self, eid: int) -> BadEvent:
        raise NotImplementedError


class ScanChecker(BadEventChecker):
    """Reference checker: scans the whole event list."""

    def __init__(self, space: Space, events: Sequence[BadEvent]):
        self.space = space
        self.events = list(events)

    def list_true(self, state):
        return [b.id for b in self.events if event_holds(self.space, state, b)]

    def event(self, eid):
        return self.events[eid]


@dataclass
class Problem:
    """A space, its bad events and a checker for them.

    ``events`` is the explicit list when the family is small enough to hold;
    lazily generated families leave it ``None`` and rely on the checker, with
    ``event_count`` giving the family size; ``enumerate_events`` may still
    list the whole family for small instances.
    """

    space: Space
    checker: BadEventChecker
    event_count: int
    events: list | None = None
    name: str = ""
    semantic_check: Callable | None = None
    certificate: object = None
    enumerate_events: Callable | None = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.events is not None:
            if any(b.id != i for i, b in enumerate(self.events)):
                raise ContractError("event ids must be dense 0..m-1")
            self.event_count = len(self.events)

    @classmethod
    def from_events(cls, space: Space, events: Sequence[BadEvent], **kw) -> "Problem":
        events = list(events)
        return cls(space, ScanChecker(space, events), len(events), events, **kw)

    def event(self, eid: int) -> BadEvent:
        return self.checker.event(eid)

    def true_events(self, state) -> list:
        return [self.checker.event(i) for i in sorted(self.checker.list_true(state))]

    def full_scan(self, state) -> list:
        """Ids of true events by brute force; needs the explicit list."""
        if self.events is None:
            raise ContractError("problem has no explicit event list")
        return [b.id for b in self.events if event_holds(self.space, state, b)]


@dataclass
class RoundRecord:
    t: int
    v_size: int
    resampled: tuple
    lfmis_rounds: int | None = None

    def to_record(self) -> dict:
        rec = {"t": self.t, "V": self.v_size, "I": len(self.resampled)}
        if self.lfmis_rounds is not None:
            rec["lfmis_rounds"] = self.lfmis_rounds
        return rec


@dataclass
class RunResult:
    state: object
    success: bool
    resamples: int
    rounds: list
    seed: int
    mode: str

    def summary(self) -> dict:
        return {
            "mode": self.mode,
            "success": self.success,
            "rounds": len(self.rounds),
            "resamples": self.resamples,
            "seed": self.seed,
        }


def _log2ceil(x: float) -> int:
    return max(1, math.ceil(math.log2(x)))


def default_round_cap(problem: Problem, epsilon: float) -> int:
    eps = max(epsilon, 0.01)
    return math.ceil(64 * _log2ceil(problem.space.size + problem.event_count + 2) / eps)


def default_resample_cap(problem: Problem) -> int:
    return 100 * problem.event_count * _log2ceil(problem.space.size + 2)


def _finish(problem: Problem, state, success: bool) -> bool:
    if success and problem.events is not None and problem.full_scan(state):
        raise AssertionError("checker missed a true event")
    return success


def run_sequential(problem: Problem, rng=None, max_resamples: int | None = None) -> RunResult:
    streams = as_streams(rng)
    space = problem.space
    cap = default_resample_cap(problem) if max_resamples is None else max_resamples
    state = space.sample_state(streams.get("init"))
    count = 0
    while True:
        true = problem.checker.list_true(state)
        if not true:
            break
        if count >= cap:
            return RunResult(state, False, count, [], streams.master, "seq")
        b = problem.event(min(true))
        seed = sample_event_seed(space, b, streams.get("step", count))
        state = apply_event_seed(space, state, b, seed)
        count += 1
    return RunResult(state, _finish(problem, state, True), count, [], streams.master, "seq")


def _round_setup(problem: Problem, streams, t: int, state, pool):
    space = problem.space
    evs = problem.true_events(state)

    def draw(b):
        return sample_event_seed(space, b, streams.get("seed", t, b.id))

    seeds = list(pool.map(draw, evs)) if pool else [draw(b) for b in evs]
    order = shuffled(range(len(evs)), streams.get("order", t))
    return evs, seeds, order


def run_round_sequential(problem: Problem, rng=None, max_rounds: int | None = None,
                         epsilon: float = 0.1) -> RunResult:
    streams = as_streams(rng)
    space = problem.space
    cap = default_round_cap(problem, epsilon) if max_rounds is None else max_rounds
    state = space.sample_state(streams.get("init"))
    records = []
    total = 0
    t = 0
    while True:
        evs, seeds, order = _round_setup(problem, streams, t, state, None)
        if not evs:
            break
        if t >= cap:
            return RunResult(state, False, total, records, streams.master, "round-seq")
        alive = [True] * len(evs)
        done = []
        for i in order:
            if not alive[i]:
                continue
            b = evs[i]
            state = apply_event_seed(space, state, b, seeds[i])
            done.append(b.id)
            alive[i] = False
            for j, b2 in enumerate(evs):
                if alive[j] and (events_dependent(space, b, b2)
                                 or not event_holds(space, state, b2)):
                    alive[j] = False
        total += len(done)
        records.append(RoundRecord(t, len(evs), tuple(done)))
        t += 1
    return RunResult(state, _finish(problem, state, True), total, records, streams.master,
                     "round-seq")


def conflict_digraph(space: Space, evs: Sequence[BadEvent], seeds: Sequence, pool=None) -> Digraph:
    """Edge ``i -> j`` iff event i is dependent on j or its seed falsifies j."""
    index = defaultdict(list)
    for j, b in enumerate(evs):
        for a in b.atoms:
            for k in space.atom_keys(a):
                index[k].append(j)

    def out_edges(i):
        b, y = evs[i], seeds[i]
        keys = set()
        for a, ya in zip(b.atoms, y):
            keys.update(space.atom_keys(a))
            keys.update(space.seed_footprint(a, ya))
        cand = set()
        for k in keys:
            cand.update(index.get(k, ()))
        cand.discard(i)
        return [(i, j) for j in sorted(cand)
                if events_dependent(space, b, evs[j])
                or not seed_stays_in(space, b, evs[j], y, check=False)]

    rows = pool.map(out_edges, range(len(evs))) if pool else map(out_edges, range(len(evs)))
    return Digraph.from_edges(len(evs), [e for row in rows for e in row])


def run_parallel(problem: Problem, rng=None, max_rounds: int | None = None,
                 epsilon: float = 0.1, workers: int = 1) -> RunResult:
    space = problem.space
    if not space.commutative:
        raise ContractError(
            f"parallel mode needs a commutative oracle; {space.descriptor.label()} is not")
    streams = as_streams(rng)
    cap = default_round_cap(problem, epsilon) if max_rounds is None else max_rounds
    state = space.sample_state(streams.get("init"))
    records = []
    total = 0
    t = 0
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        while True:
            evs, seeds, order = _round_setup(problem, streams, t, state, pool)
            if not evs:
                break
            if t >= cap:
                return RunResult(state, False, total, records, streams.master, "parallel")
            g = conflict_digraph(space, evs, seeds, pool)
            chosen, lrounds = lfmis_parallel(g, order)
            batch = [i for i in order if i in chosen]
            steps = [(a, y) for i in batch for a, y in zip(evs[i].atoms, seeds[i])]
            state = space.apply_many(state, steps)
            total += len(batch)
            records.append(RoundRecord(t, len(evs), tuple(evs[i].id for i in batch), lrounds))
            t += 1
    finally:
        if pool:
            pool.shutdown()
    return RunResult(state, _finish(problem, state, True), total, records, streams.master,
                     "parallel")


def run(problem: Problem, mode: str, rng=None, max_rounds: int | None = None,
        epsilon: float = 0.1, workers: int = 1) -> RunResult:
    if mode == "seq":
        return run_sequential(problem, rng, max_rounds)
    if mode == "round-seq":
        return run_round_sequential(problem, rng, max_rounds, epsilon)
    if mode == "parallel":
        return run_parallel(problem, rng, max_rounds, epsilon, workers)
    raise ContractError(f"unknown mode {mode!r}")


def couple_check(problem: Problem, rng=None, rounds: int | None = None) -> bool:
    """Run both round drivers on the same streams and compare them exactly."""
    a = run_parallel(problem, rng, rounds)
    b = run_round_sequential(problem, rng, rounds)
    space = problem.space
    return (a.success == b.success
            and [r.resampled for r in a.rounds] == [r.resampled for r in b.rounds]
            and space.state_key(a.state) == space.state_key(b.state))
