"""Probability-space contract, bad events and the atomic lifting.

A *space* bundles a finite probability space with a family of atomic events,
a lopsidependency relation on those atoms and an oblivious resampling oracle
for each atom.  Bad events are conjunctions of pairwise non-dependent atoms;
everything the engine needs for them (seed sampling, resampling, the
"does this seed keep that event true" test) is derived here from the atomic
operations, so concrete spaces only implement the atom-level pieces.

Atoms, seeds and states are plain immutable values (mostly tuples) whose
layout is owned by the concrete space.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Iterator, Sequence

Atom = Any
State = Any
Seed = Any

KINDS = ("variables", "permutation", "matching", "hamcycle", "product")


class ContractError(ValueError):
    """An operation was called outside its precondition."""


@dataclass(frozen=True)
class SpaceDescriptor:
    """Serializable description of a probability space.

    ``domains`` holds, per variable, a tuple of rational weights (one per
    value); it is only used by the ``variables`` kind.  ``components`` holds
    nested descriptors for ``product`` spaces.
    """

    kind: str
    n: int = 0
    s: int = 0
    domains: tuple = ()
    components: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ContractError(f"unknown space kind {self.kind!r}")
        if self.kind in ("permutation", "hamcycle") and self.n < 2:
            raise ContractError(f"{self.kind} space needs n >= 2, got {self.n}")
        if self.kind == "matching":
            if self.s < 2 or self.n < self.s or self.n % self.s:
                raise ContractError(
                    f"matching space needs s >= 2 dividing n, got n={self.n} s={self.s}")
        if self.kind == "variables":
            for i, weights in enumerate(self.domains):
                if not weights or any(Fraction(w) <= 0 for w in weights):
                    raise ContractError(f"variable {i}: weights must be positive")
                if sum(Fraction(w) for w in weights) != 1:
                    raise ContractError(f"variable {i}: weights must sum to 1")
        if self.kind == "product" and not self.components:
            raise ContractError("product space needs at least one component")

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind in ("permutation", "hamcycle", "matching"):
            d["n"] = self.n
        if self.kind == "matching":
            d["s"] = self.s
        if self.kind == "variables":
            d["domains"] = [[str(Fraction(w)) for w in ws] for ws in self.domains]
        if self.kind == "product":
            d["components"] = [c.to_dict() for c in self.components]
        return d

    def label(self) -> str:
        if self.kind == "permutation":
            return f"S_{self.n}"
        if self.kind == "matching":
            return f"K_{self.n}^({self.s})" if self.s > 2 else f"K_{self.n}"
        if self.kind == "hamcycle":
            return f"hamcycles({self.n})"
        if self.kind == "variables":
            return "vars(" + ",".join(str(len(w)) for w in self.domains) + ")"
        return " x ".join(c.label() for c in self.components)


class Space(ABC):
    """Atomic oblivious resampling oracle for one probability space.

    Subclasses implement the atom-level contract.  ``seed_distribution`` and
    the enumeration hooks (``states``, ``atoms``, ``weight``) only need to be
    practical for the small instances the axiom testkit works with.
    """

    #: Whether the oracle is known to satisfy commutativity; the parallel
    #: driver refuses spaces where this is False.
    commutative: bool = True

    @property
    @abstractmethod
    def descriptor(self) -> SpaceDescriptor: ...

    @property
    @abstractmethod
    def size(self) -> int:
        """Ground-set size used for round caps."""

    # -- states -------------------------------------------------------------
    @abstractmethod
    def sample_state(self, rnd) -> State: ...

    @abstractmethod
    def check_state(self, state: State) -> None:
        """Raise ``ContractError`` unless ``state`` satisfies the invariants."""

    def state_key(self, state: State) -> Hashable:
        return state

    # -- atoms --------------------------------------------------------------
    @abstractmethod
    def check_atom(self, atom: Atom) -> Atom:
        """Validate ``atom`` and return its canonical form."""

    @abstractmethod
    def holds(self, state: State, atom: Atom) -> bool: ...

    @abstractmethod
    def dependent(self, a: Atom, b: Atom) -> bool: ...

    @abstractmethod
    def atom_keys(self, atom: Atom) -> tuple:
        """Keys such that dependent atoms always share at least one key."""

    @abstractmethod
    def seed_footprint(self, atom: Atom, seed: Seed) -> tuple:
        """Keys such that any atom this seed can falsify shares one of them."""

    # -- seeds --------------------------------------------------------------
    @abstractmethod
    def sample_seed(self, atom: Atom, cond: Sequence[Atom], rnd) -> Seed:
        """Draw from the seeds of ``atom`` that keep every atom of ``cond``."""

    @abstractmethod
    def seed_distribution(self, atom: Atom, cond: Sequence[Atom] = ()) -> list:
        """Closed-form ``[(seed, probability)]`` for the same distribution."""

    @abstractmethod
    def stays(self, atom: Atom, other: Atom, seed: Seed) -> bool:
        """Whether ``seed`` keeps ``other`` true; atoms must be non-dependent."""

    @abstractmethod
    def apply(self, state: State, atom: Atom, seed: Seed) -> State: ...

    def apply_many(self, state: State, steps: Iterable[tuple]) -> State:
        """Apply ``(atom, seed)`` pairs left to right."""
        for atom, seed in steps:
            state = self.apply(state, atom, seed)
        return state

    # -- probabilities and enumeration -------------------------------------
    @abstractmethod
    def event_probability(self, atoms: Sequence[Atom]) -> Fraction:
        """Exact probability of the conjunction of independent ``atoms``."""

    @abstractmethod
    def states(self) -> Iterator[State]: ...

    @abstractmethod
    def weight(self, state: State) -> Fraction: ...

    @abstractmethod
    def atoms(self) -> Iterator[Atom]: ...

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor.label()}>"


@dataclass(frozen=True)
class BadEvent:
    """Conjunction of pairwise non-dependent atoms with a stable id.

    Build instances with :func:`make_event`, which enforces canonical atom
    order and independence.
    """

    id: int
    atoms: tuple = field(default=())

    def __len__(self) -> int:
        return len(self.atoms)


def make_event(space: Space, atoms: Iterable[Atom], id: int = 0) -> BadEvent:
    canon = sorted({space.check_atom(a) for a in atoms})
    for a, b in itertools.combinations(canon, 2):
        if space.dependent(a, b):
            raise ContractError(f"atoms {a!r} and {b!r} are dependent")
    return BadEvent(id, tuple(canon))


def atoms_dependent(space: Space, a: Atom, b: Atom) -> bool:
    return space.dependent(a, b)


def events_dependent(space: Space, b1: BadEvent, b2: BadEvent) -> bool:
    dep = space.dependent
    return any(dep(a, a2) for a in b1.atoms for a2 in b2.atoms)


def event_holds(space: Space, state: State, event: BadEvent) -> bool:
    holds = space.holds
    return all(holds(state, a) for a in event.atoms)


def sample_state(space: Space, rnd) -> State:
    return space.sample_state(rnd)


def sample_event_seed(space: Space, event: BadEvent, rnd) -> tuple:
    """Seed for a lifted event: component i is conditioned on atoms i+1..k."""
    atoms = event.atoms
    return tuple(space.sample_seed(a, atoms[i + 1:], rnd) for i, a in enumerate(atoms))


def apply_event_seed(space: Space, state: State, event: BadEvent, seed: tuple) -> State:
    if len(seed) != len(event.atoms):
        raise ContractError(
            f"seed has {len(seed)} components, event has {len(event.atoms)} atoms")
    return space.apply_many(state, zip(event.atoms, seed))


def seed_stays_in(space: Space, event: BadEvent, other: BadEvent, seed: tuple,
                  check: bool = True) -> bool:
    """Whether ``seed`` (drawn for ``event``) keeps ``other`` true.

    Obliviousness makes this a property of the seed alone; it is evaluated
    atom by atom.
    """
    if check and events_dependent(space, event, other):
        raise ContractError("seed_stays_in called on dependent events")
    stays = space.stays
    return all(stays(a, a2, y) for a, y in zip(event.atoms, seed) for a2 in other.atoms)


def event_seed_distribution(space: Space, event: BadEvent) -> list:
    """Closed-form distribution of lifted seeds, as ``[(seed, probability)]``."""
    atoms = event.atoms
    parts = [space.seed_distribution(a, atoms[i + 1:]) for i, a in enumerate(atoms)]
    out = []
    for combo in itertools.product(*parts):
        p = Fraction(1)
        for _, w in combo:
            p *= w
        out.append((tuple(y for y, _ in combo), p))
    return out


def event_probability(space: Space, event: BadEvent) -> Fraction:
    return space.event_probability(event.atoms)
