"""Cartesian product of spaces; atoms are ``(component, inner_atom)``."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from ..core import ContractError, Space, SpaceDescriptor


class ProductSpace(Space):
    def __init__(self, components: Sequence[Space]):
        self.components = tuple(components)
        self._desc = SpaceDescriptor(
            "product", components=tuple(c.descriptor for c in self.components))
        self.commutative = all(c.commutative for c in self.components)

    @property
    def descriptor(self):
        return self._desc

    @property
    def size(self):
        return sum(c.size for c in self.components)

    def sample_state(self, rnd):
        return tuple(c.sample_state(rnd) for c in self.components)

    def check_state(self, state):
        if len(state) != len(self.components):
            raise ContractError("product state has the wrong number of components")
        for c, u in zip(self.components, state):
            c.check_state(u)

    def state_key(self, state):
        return tuple(c.state_key(u) for c, u in zip(self.components, state))

    def check_atom(self, atom):
        try:
            c, inner = atom
        except (TypeError, ValueError):
            raise ContractError(f"product atom must be (component, atom), got {atom!r}") from None
        if not isinstance(c, int) or not 0 <= c < len(self.components):
            raise ContractError(f"component index {c!r} out of range")
        return (c, self.components[c].check_atom(inner))

    def holds(self, state, atom):
        c, inner = atom
        return self.components[c].holds(state[c], inner)

    def dependent(self, a, b):
        return a[0] == b[0] and self.components[a[0]].dependent(a[1], b[1])

    def atom_keys(self, atom):
        c, inner = atom
        return tuple((c, k) for k in self.components[c].atom_keys(inner))

    def seed_footprint(self, atom, seed):
        c, inner = atom
        return tuple((c, k) for k in self.components[c].seed_footprint(inner, seed))

    @staticmethod
    def _local(c, cond):
        return [inner for (c2, inner) in cond if c2 == c]

    def sample_seed(self, atom, cond: Sequence = (), rnd=None):
        c, inner = atom
        return self.components[c].sample_seed(inner, self._local(c, cond), rnd)

    def seed_distribution(self, atom, cond: Sequence = ()):
        c, inner = atom
        return self.components[c].seed_distribution(inner, self._local(c, cond))

    def stays(self, atom, other, seed):
        c, inner = atom
        if other[0] != c:
            return True
        return self.components[c].stays(inner, other[1], seed)

    def apply(self, state, atom, seed):
        return self.apply_many(state, ((atom, seed),))

    def apply_many(self, state, steps):
        per = [[] for _ in self.components]
        for (c, inner), seed in steps:
            per[c].append((inner, seed))
        return tuple(comp.apply_many(u, st) if st else u
                     for comp, u, st in zip(self.components, state, per))

    def event_probability(self, atoms):
        p = Fraction(1)
        for c, comp in enumerate(self.components):
            p *= comp.event_probability(self._local(c, atoms))
        return p

    def states(self):
        return itertools.product(*(c.states() for c in self.components))

    def weight(self, state):
        p = Fraction(1)
        for c, u in zip(self.components, state):
            p *= c.weight(u)
        return p

    def atoms(self):
        for i, c in enumerate(self.components):
            for a in c.atoms():
                yield (i, a)
