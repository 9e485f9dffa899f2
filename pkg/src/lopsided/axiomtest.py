"""Exhaustive, exact checks of the oracle axioms on small spaces.

Every check enumerates the whole state space and the whole seed set and
compares distributions with ``fractions.Fraction``; no tolerance is used.

Seed sets for lifted events are rebuilt here from the *unconditioned* atom
seed sets by filtering with ``stays``.  The closed-form conditioned sets that
the samplers use are checked separately against both the filter and the
literal definition (:func:`check_conditioning`), so a bug in either route
shows up as a disagreement.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (BadEvent, ContractError, Space, SpaceDescriptor, apply_event_seed,
                   event_holds, events_dependent, make_event, seed_stays_in)

BUDGET = 10 ** 7


class BudgetExceeded(ContractError):
    """The exhaustive enumeration would be too large."""


@dataclass
class AxiomReport:
    space: SpaceDescriptor
    axiom: str
    events: tuple
    verdict: str  # "pass", "fail" or "vacuous"
    counterexample: dict | None = None
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict in ("pass", "vacuous")

    def to_record(self) -> dict:
        rec = {
            "space": self.space.label(),
            "axiom": self.axiom,
            "events": [list(map(_jsonable, e)) for e in self.events],
            "verdict": self.verdict,
        }
        if self.detail:
            rec["detail"] = {k: _jsonable(v) for k, v in self.detail.items()}
        if self.counterexample is not None:
            rec["counterexample"] = {k: _jsonable(v) for k, v in self.counterexample.items()}
        return rec


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    for attr in ("fwd", "part"):
        if hasattr(v, attr):
            return _jsonable(getattr(v, attr))
    return repr(v)


# -- enumeration helpers ----------------------------------------------------

_UNIVERSE: dict = {}


def universe(space: Space) -> list:
    """All ``(state, weight)`` pairs of the space (cached per instance)."""
    key = id(space)
    hit = _UNIVERSE.get(key)
    if hit is None or hit[0] is not space:
        states = [(u, space.weight(u)) for u in space.states()]
        hit = _UNIVERSE[key] = (space, states)
    return hit[1]


def states_in(space: Space, event: BadEvent) -> list:
    return [(u, w) for u, w in universe(space) if event_holds(space, u, event)]


def _normalize(pairs) -> list:
    pairs = list(pairs)
    total = sum(p for _, p in pairs)
    if total == 0:
        return []
    return [(y, p / total) for y, p in pairs]


def conditioned_by_filter(space: Space, atom, cond: Sequence) -> list:
    """Unconditioned seeds of ``atom`` kept by ``stays`` for every ``cond`` atom."""
    base = space.seed_distribution(atom, ())
    return _normalize((y, p) for y, p in base
                      if all(space.stays(atom, c, y) for c in cond))


def conditioned_by_definition(space: Space, atom, cond: Sequence) -> list:
    """Seeds whose action keeps ``cond`` true from every state in atom and cond."""
    joint = BadEvent(-1, tuple(sorted(set(cond) | {atom})))
    target = BadEvent(-1, tuple(sorted(set(cond))))
    starts = [u for u, _ in states_in(space, joint)]
    base = space.seed_distribution(atom, ())
    keep = []
    for y, p in base:
        if all(event_holds(space, space.apply(u, atom, y), target) for u in starts):
            keep.append((y, p))
    return _normalize(keep)


def event_seeds(space: Space, event: BadEvent) -> list:
    """Lifted seed distribution of ``event`` built via the filter route."""
    atoms = event.atoms
    parts = [conditioned_by_filter(space, a, atoms[i + 1:]) for i, a in enumerate(atoms)]
    out = []
    for combo in itertools.product(*parts):
        p = Fraction(1)
        for _, w in combo:
            p *= w
        out.append((tuple(y for y, _ in combo), p))
    return out


def restricted_seeds(space: Space, event: BadEvent, other: BadEvent) -> list:
    """Seeds of ``event`` that keep ``other`` true, renormalized."""
    return _normalize((y, p) for y, p in event_seeds(space, event)
                      if seed_stays_in(space, event, other, y, check=False))


def _dist_key(dist: dict) -> dict:
    return {k: v for k, v in dist.items() if v}


def _guard(*sizes):
    total = 1
    for s in sizes:
        total *= max(1, s)
    if total > BUDGET:
        raise BudgetExceeded(f"enumeration of {' x '.join(map(str, sizes))} exceeds {BUDGET}")


def _events(*evs) -> tuple:
    return tuple(e.atoms for e in evs)


# -- the axioms -------------------------------------------------------------

def verify_c1(space: Space, event: BadEvent) -> AxiomReport:
    """Regeneration: resampling a state drawn from the event restores the law."""
    inside = states_in(space, event)
    seeds = event_seeds(space, event)
    _guard(len(inside), len(seeds))
    total = sum(w for _, w in inside)
    detail = {"states_in_event": len(inside), "seeds": len(seeds)}
    if total == 0:
        return AxiomReport(space.descriptor, "C1", _events(event), "vacuous", detail=detail)
    out: dict = defaultdict(Fraction)
    for u, w in inside:
        for y, p in seeds:
            v = apply_event_seed(space, u, event, y)
            try:
                space.check_state(v)
            except ContractError as exc:
                return AxiomReport(space.descriptor, "C1", _events(event), "fail",
                                   {"state": u, "seed": y, "result": v, "reason": str(exc)},
                                   detail)
            out[space.state_key(v)] += w / total * p
    want = {space.state_key(u): w for u, w in universe(space)}
    got = _dist_key(out)
    for k in set(want) | set(got):
        if got.get(k, 0) != want.get(k, 0):
            return AxiomReport(space.descriptor, "C1", _events(event), "fail",
                               {"state": k, "got": got.get(k, Fraction(0)),
                                "want": want.get(k, Fraction(0))}, detail)
    return AxiomReport(space.descriptor, "C1", _events(event), "pass", detail=detail)


def verify_c2(space: Space, event: BadEvent, other: BadEvent) -> AxiomReport:
    """Locality: resampling never makes a non-dependent false event true."""
    if events_dependent(space, event, other):
        raise ContractError("verify_c2 needs non-dependent events")
    starts = [u for u, _ in states_in(space, event) if not event_holds(space, u, other)]
    seeds = event_seeds(space, event)
    _guard(len(starts), len(seeds))
    evs = _events(event, other)
    if not starts:
        return AxiomReport(space.descriptor, "C2", evs, "vacuous")
    for u in starts:
        for y, _ in seeds:
            v = apply_event_seed(space, u, event, y)
            if event_holds(space, v, other):
                return AxiomReport(space.descriptor, "C2", evs, "fail",
                                   {"state": u, "seed": y, "result": v})
    return AxiomReport(space.descriptor, "C2", evs, "pass",
                       detail={"states": len(starts), "seeds": len(seeds)})


def _outcomes(space, u, first, y1s, second, y2s) -> dict:
    out: dict = defaultdict(Fraction)
    for y1, p1 in y1s:
        v = apply_event_seed(space, u, first, y1)
        for y2, p2 in y2s:
            out[space.state_key(apply_event_seed(space, v, second, y2))] += p1 * p2
    return _dist_key(out)


def verify_c3(space: Space, b1: BadEvent, b2: BadEvent) -> AxiomReport:
    """Commutativity in the oblivious form: both resampling orders agree."""
    if events_dependent(space, b1, b2):
        raise ContractError("verify_c3 needs non-dependent events")
    evs = _events(b1, b2)
    if b1.atoms == b2.atoms:
        return AxiomReport(space.descriptor, "C3", evs, "vacuous")
    both = BadEvent(-1, tuple(sorted(set(b1.atoms) | set(b2.atoms))))
    starts = [u for u, _ in states_in(space, both)]
    y1_keep = restricted_seeds(space, b1, b2)
    y2_all = event_seeds(space, b2)
    y2_keep = restricted_seeds(space, b2, b1)
    y1_all = event_seeds(space, b1)
    _guard(len(starts), len(y1_keep) * len(y2_all) + len(y2_keep) * len(y1_all))
    if not starts:
        return AxiomReport(space.descriptor, "C3", evs, "vacuous")
    for u in starts:
        left = _outcomes(space, u, b1, y1_keep, b2, y2_all)
        right = _outcomes(space, u, b2, y2_keep, b1, y1_all)
        if left != right:
            diff = next(k for k in set(left) | set(right) if left.get(k) != right.get(k))
            return AxiomReport(space.descriptor, "C3", evs, "fail",
                               {"state": u, "outcome": diff,
                                "first_order": left.get(diff, Fraction(0)),
                                "second_order": right.get(diff, Fraction(0))})
    return AxiomReport(space.descriptor, "C3", evs, "pass", detail={"states": len(starts)})


def verify_c4(space: Space, event: BadEvent, other: BadEvent) -> AxiomReport:
    """Obliviousness: whether a seed keeps ``other`` true ignores the state."""
    if events_dependent(space, event, other):
        raise ContractError("verify_c4 needs non-dependent events")
    evs = _events(event, other)
    both = BadEvent(-1, tuple(sorted(set(event.atoms) | set(other.atoms))))
    starts = states_in(space, both)
    seeds = event_seeds(space, event)
    _guard(len(starts), len(seeds))
    if not starts:
        return AxiomReport(space.descriptor, "C4", evs, "vacuous")
    total = sum(w for _, w in starts)
    for y, _ in seeds:
        hit = sum((w for u, w in starts
                   if event_holds(space, apply_event_seed(space, u, event, y), other)),
                  Fraction(0))
        frac = hit / total
        claimed = seed_stays_in(space, event, other, y, check=False)
        if frac not in (0, 1) or bool(frac) != claimed:
            return AxiomReport(space.descriptor, "C4", evs, "fail",
                               {"seed": y, "fraction": frac, "stays": claimed})
    return AxiomReport(space.descriptor, "C4", evs, "pass",
                       detail={"states": len(starts), "seeds": len(seeds)})


def check_conditioning(space: Space, atom, cond: Sequence) -> AxiomReport:
    """Closed-form conditioned seeds against the filter and the definition."""
    cond = tuple(sorted(set(cond)))
    evs = ((atom,), cond)
    closed = dict(space.seed_distribution(atom, cond))
    via_filter = dict(conditioned_by_filter(space, atom, cond))
    via_def = dict(conditioned_by_definition(space, atom, cond))
    if not (closed == via_filter == via_def):
        bad = next(y for y in set(closed) | set(via_filter) | set(via_def)
                   if not closed.get(y, 0) == via_filter.get(y, 0) == via_def.get(y, 0))
        return AxiomReport(space.descriptor, "COND", evs, "fail",
                           {"seed": bad, "closed_form": closed.get(bad, Fraction(0)),
                            "filter": via_filter.get(bad, Fraction(0)),
                            "definition": via_def.get(bad, Fraction(0))})
    return AxiomReport(space.descriptor, "COND", evs, "pass", detail={"seeds": len(closed)})


def check_probability(space: Space, event: BadEvent) -> AxiomReport:
    """Closed-form event probability against the enumerated measure."""
    got = sum((w for _, w in states_in(space, event)), Fraction(0))
    want = space.event_probability(event.atoms)
    verdict = "pass" if got == want else "fail"
    ce = None if got == want else {"enumerated": got, "closed_form": want}
    return AxiomReport(space.descriptor, "PROB", _events(event), verdict, ce)


# -- suites -----------------------------------------------------------------

def independent_pairs(space: Space, atoms: Iterable) -> list:
    atoms = list(atoms)
    return [(a, b) for a, b in itertools.combinations(atoms, 2) if not space.dependent(a, b)]


def verify_lifting(space: Space, atom_pairs: Iterable, partners: Iterable | None = None,
                   c3: bool | None = None) -> list:
    """Run the axioms on two-atom events built from ``atom_pairs``.

    Each lifted event gets a C1 check; C2, C4 (and C3 when the space is
    commutative, or ``c3`` is forced) are run against every partner atom that
    is non-dependent on it.  Partners default to the atoms appearing in the
    pairs.
    """
    pairs = list(atom_pairs)
    if partners is None:
        partners = sorted({a for p in pairs for a in p})
    partner_events = [make_event(space, [a]) for a in partners]
    do_c3 = space.commutative if c3 is None else c3
    out = []
    for a, b in pairs:
        ev = make_event(space, [a, b])
        out.append(verify_c1(space, ev))
        for pe in partner_events:
            if events_dependent(space, ev, pe):
                continue
            out.append(verify_c2(space, ev, pe))
            out.append(verify_c4(space, ev, pe))
            if do_c3:
                out.append(verify_c3(space, ev, pe))
    return out


def verify_atoms(space: Space, atoms: Iterable | None = None, c3: bool | None = None,
                 conditioning: bool = True) -> list:
    """All single-atom C1, plus C2/C4/C3 and conditioning on every pair."""
    atoms = list(space.atoms() if atoms is None else atoms)
    do_c3 = space.commutative if c3 is None else c3
    events = {a: make_event(space, [a]) for a in atoms}
    out = [verify_c1(space, events[a]) for a in atoms]
    out += [check_probability(space, events[a]) for a in atoms]
    for a in atoms:
        for b in atoms:
            if space.dependent(a, b):
                continue
            out.append(verify_c2(space, events[a], events[b]))
            out.append(verify_c4(space, events[a], events[b]))
            if do_c3 and a <= b:
                out.append(verify_c3(space, events[a], events[b]))
            if conditioning:
                out.append(check_conditioning(space, a, (b,)))
        if conditioning and not space.dependent(a, a):
            out.append(check_conditioning(space, a, (a,)))
    return out


def search_c3(space: Space, atoms: Iterable | None = None, limit: int | None = None) -> dict:
    """Look for commutativity failures without asserting anything."""
    atoms = list(space.atoms() if atoms is None else atoms)
    tried = failures = 0
    first = None
    for a, b in independent_pairs(space, atoms):
        if limit is not None and tried >= limit:
            break
        rep = verify_c3(space, make_event(space, [a]), make_event(space, [b]))
        tried += 1
        if rep.verdict == "fail":
            failures += 1
            if first is None:
                first = rep
    return {"pairs_tried": tried, "failures": failures, "first_failure": first}


def summarize(reports: Sequence[AxiomReport]) -> dict:
    counts: dict = defaultdict(lambda: defaultdict(int))
    for r in reports:
        counts[r.axiom][r.verdict] += 1
    return {k: dict(v) for k, v in sorted(counts.items())}
