"""Uniform permutations of ``range(n)`` with transposition resampling.

The atom ``(x, y)`` is the event ``pi(x) == y``.  Its seed is a value ``z``;
resampling left-multiplies by the transposition ``(y z)``, i.e. swaps the
values ``y`` and ``z`` in the table.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Sequence

from ..core import ContractError, Space, SpaceDescriptor
from ._util import check_int, compose, swap_map, uniform_excluding


class PermState:
    """Permutation table with a cached inverse; identity is ``fwd`` only."""

    __slots__ = ("fwd", "inv")

    def __init__(self, fwd, inv=None):
        self.fwd = tuple(fwd)
        if inv is None:
            inv = [0] * len(self.fwd)
            for i, v in enumerate(self.fwd):
                inv[v] = i
        self.inv = tuple(inv)

    def __eq__(self, other):
        if isinstance(other, PermState):
            return self.fwd == other.fwd
        return NotImplemented

    def __hash__(self):
        return hash(self.fwd)

    def __len__(self):
        return len(self.fwd)

    def __getitem__(self, i):
        return self.fwd[i]

    def __repr__(self):
        return f"PermState({list(self.fwd)})"


def perm_seed_stays(a: tuple, a2: tuple, z: int) -> bool:
    """Whether the seed ``z`` of atom ``a`` keeps the atom ``a2`` true."""
    (x, y), (x2, y2) = a, a2
    if a == a2:
        return z == y
    if x == x2 or y == y2:
        raise ContractError(f"atoms {a} and {a2} are dependent")
    return z != y2


class PermutationSpace(Space):
    def __init__(self, n: int):
        self._desc = SpaceDescriptor("permutation", n=n)
        self.n = n

    @property
    def descriptor(self):
        return self._desc

    @property
    def size(self):
        return self.n

    def sample_state(self, rnd):
        fwd = list(range(self.n))
        for i in range(self.n - 1, 0, -1):
            j = rnd.randrange(i + 1)
            fwd[i], fwd[j] = fwd[j], fwd[i]
        return PermState(fwd)

    def check_state(self, state):
        fwd = state.fwd if isinstance(state, PermState) else tuple(state)
        if sorted(fwd) != list(range(self.n)):
            raise ContractError("permutation table is not a bijection of range(n)")
        if isinstance(state, PermState):
            if any(state.inv[v] != i for i, v in enumerate(fwd)):
                raise ContractError("inverse table out of sync")

    def state_key(self, state):
        return state.fwd

    def check_atom(self, atom):
        try:
            x, y = atom
        except (TypeError, ValueError):
            raise ContractError(f"permutation atom must be a pair, got {atom!r}") from None
        return (check_int(x, self.n, "row"), check_int(y, self.n, "value"))

    def holds(self, state, atom):
        return state.fwd[atom[0]] == atom[1]

    def dependent(self, a, b):
        return (a[0] == b[0]) != (a[1] == b[1])

    def atom_keys(self, atom):
        return (("r", atom[0]), ("c", atom[1]))

    def seed_footprint(self, atom, seed):
        return (("c", atom[1]), ("c", seed))

    def _forbidden(self, atom, cond):
        if atom in cond:
            return None
        return {c[1] for c in cond}

    def sample_seed(self, atom, cond: Sequence = (), rnd=None):
        bad = self._forbidden(atom, cond)
        if bad is None:
            return atom[1]
        return uniform_excluding(rnd, self.n, bad)

    def seed_distribution(self, atom, cond: Sequence = ()):
        bad = self._forbidden(atom, cond)
        if bad is None:
            return [(atom[1], Fraction(1))]
        row = [z for z in range(self.n) if z not in bad]
        return [(z, Fraction(1, len(row))) for z in row]

    def stays(self, atom, other, seed):
        return perm_seed_stays(atom, other, seed)

    def _map(self, atom, seed):
        check_int(seed, self.n, "seed")
        return swap_map(atom[1], seed)

    def apply(self, state, atom, seed):
        return self.apply_many(state, ((atom, seed),))

    def apply_many(self, state, steps):
        g: dict = {}
        for atom, seed in steps:
            g = compose(self._map(atom, seed), g)
        if not g:
            return state
        fwd = list(state.fwd)
        inv = list(state.inv)
        for w, gw in g.items():
            fwd[state.inv[w]] = gw
            inv[gw] = state.inv[w]
        return PermState(fwd, inv)

    def event_probability(self, atoms):
        k = len(atoms)
        return Fraction(factorial(self.n - k), factorial(self.n))

    def states(self):
        for p in itertools.permutations(range(self.n)):
            yield PermState(p)

    def weight(self, state):
        return Fraction(1, factorial(self.n))

    def atoms(self):
        return itertools.product(range(self.n), repeat=2)
