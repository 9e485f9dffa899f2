"""Independent discrete variables with rational marginals.

The atom ``(i, j)`` is the event ``X_i == j``.  Its seed is a fresh value for
``X_i`` drawn from the marginal of variable i.
"""

from __future__ import annotations

import bisect
import itertools
from fractions import Fraction
from typing import Sequence

from ..core import ContractError, Space, SpaceDescriptor
from ._util import check_int


class VariableSpace(Space):
    def __init__(self, domains):
        doms = tuple(tuple(Fraction(w) for w in ws) for ws in domains)
        self._desc = SpaceDescriptor("variables", n=len(doms), domains=doms)
        self.domains = doms
        self._uniform = [len(set(ws)) == 1 for ws in doms]
        self._cum = [list(itertools.accumulate(float(w) for w in ws)) for ws in doms]

    @classmethod
    def uniform(cls, nvars: int, d: int = 2) -> "VariableSpace":
        w = (Fraction(1, d),) * d
        return cls([w] * nvars)

    @property
    def descriptor(self):
        return self._desc

    @property
    def size(self):
        return len(self.domains)

    def _draw(self, i, rnd):
        ws = self.domains[i]
        if self._uniform[i]:
            return rnd.randrange(len(ws))
        cum = self._cum[i]
        j = bisect.bisect_right(cum, rnd.random() * cum[-1])
        return min(j, len(ws) - 1)

    def sample_state(self, rnd):
        return tuple(self._draw(i, rnd) for i in range(len(self.domains)))

    def check_state(self, state):
        if len(state) != len(self.domains):
            raise ContractError("assignment has the wrong number of variables")
        for i, v in enumerate(state):
            check_int(v, len(self.domains[i]), f"value of variable {i}")

    def check_atom(self, atom):
        try:
            i, j = atom
        except (TypeError, ValueError):
            raise ContractError(f"variable atom must be a pair, got {atom!r}") from None
        i = check_int(i, len(self.domains), "variable")
        return (i, check_int(j, len(self.domains[i]), "value"))

    def holds(self, state, atom):
        return state[atom[0]] == atom[1]

    def dependent(self, a, b):
        return a[0] == b[0] and a[1] != b[1]

    def atom_keys(self, atom):
        return (atom[0],)

    def seed_footprint(self, atom, seed):
        return (atom[0],)

    def sample_seed(self, atom, cond: Sequence = (), rnd=None):
        if atom in cond:
            return atom[1]
        return self._draw(atom[0], rnd)

    def seed_distribution(self, atom, cond: Sequence = ()):
        if atom in cond:
            return [(atom[1], Fraction(1))]
        return list(enumerate(self.domains[atom[0]]))

    def stays(self, atom, other, seed):
        if atom == other:
            return seed == atom[1]
        if self.dependent(atom, other):
            raise ContractError(f"atoms {atom} and {other} are dependent")
        return True

    def apply(self, state, atom, seed):
        return self.apply_many(state, ((atom, seed),))

    def apply_many(self, state, steps):
        out = None
        for (i, _), v in steps:
            check_int(v, len(self.domains[i]), "seed value")
            if out is None:
                out = list(state)
            out[i] = v
        return state if out is None else tuple(out)

    def event_probability(self, atoms):
        p = Fraction(1)
        for i, j in atoms:
            p *= self.domains[i][j]
        return p

    def states(self):
        return itertools.product(*(range(len(ws)) for ws in self.domains))

    def weight(self, state):
        p = Fraction(1)
        for i, v in enumerate(state):
            p *= self.domains[i][v]
        return p

    def atoms(self):
        for i, ws in enumerate(self.domains):
            for j in range(len(ws)):
                yield (i, j)
