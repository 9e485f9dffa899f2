"""Uniform perfect matchings of the complete s-uniform hypergraph on ``range(n)``.

The atom ``e`` (a sorted s-tuple) is the event ``e in M``.  A seed is a
tuple ``(z_2, ..., z_s)``; the resampling permutation is
``(x_2 z_2) ... (x_s z_s)`` with the rightmost transposition applied first,
acting on every edge of the matching.  ``z_i`` ranges over ``range(n)``
minus ``{x_1, ..., x_{i-1}}``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Sequence

from ..core import ContractError, Space, SpaceDescriptor
from ._util import check_int, compose, falling, swap_map, uniform_excluding, uniform_rows


def count_matchings(n: int, s: int) -> int:
    if n % s:
        return 0
    m = n // s
    return factorial(n) // (factorial(s) ** m * factorial(m))


class MatchState:
    """Perfect s-matching stored as ``part[v]`` = the edge containing ``v``."""

    __slots__ = ("part",)

    def __init__(self, part):
        self.part = tuple(part)

    @classmethod
    def from_edges(cls, n: int, edges) -> "MatchState":
        part = [None] * n
        for e in edges:
            e = tuple(sorted(e))
            for v in e:
                if part[v] is not None:
                    raise ContractError(f"vertex {v} covered twice")
                part[v] = e
        if any(p is None for p in part):
            raise ContractError("edges do not cover every vertex")
        return cls(part)

    def edges(self) -> tuple:
        return tuple(sorted(set(self.part)))

    def __eq__(self, other):
        if isinstance(other, MatchState):
            return self.part == other.part
        return NotImplemented

    def __hash__(self):
        return hash(self.part)

    def __repr__(self):
        return f"MatchState({list(self.edges())})"


def _point_map(e: tuple, z: tuple) -> dict:
    g: dict = {}
    for i in range(1, len(e)):
        g = compose(g, swap_map(e[i], z[i - 1]))
    return g


def check_matching_seed(n: int, e: tuple, z) -> tuple:
    s = len(e)
    try:
        z = tuple(z)
    except TypeError:
        raise ContractError(f"matching seed must be a sequence, got {z!r}") from None
    if len(z) != s - 1:
        raise ContractError(f"matching seed needs {s - 1} entries, got {len(z)}")
    for i, zi in enumerate(z, start=1):
        check_int(zi, n, "seed entry")
        if zi in e[:i]:
            raise ContractError(f"seed entry z_{i + 1}={zi} must avoid {e[:i]}")
    return z


def matching_apply(M: MatchState, e: tuple, seed) -> MatchState:
    """Act on ``M`` by the permutation encoded in ``seed`` for edge ``e``."""
    n = len(M.part)
    seed = check_matching_seed(n, e, seed)
    return _act(M, _point_map(e, seed))


def _act(M: MatchState, g: dict) -> MatchState:
    if not g:
        return M
    part = list(M.part)
    for f in {M.part[v] for v in g}:
        nf = tuple(sorted(g.get(u, u) for u in f))
        for u in nf:
            part[u] = nf
    return MatchState(part)


class MatchingSpace(Space):
    def __init__(self, n: int, s: int = 2):
        self._desc = SpaceDescriptor("matching", n=n, s=s)
        self.n = n
        self.s = s
        # Commutativity is only established for graphs.
        self.commutative = s == 2

    @property
    def descriptor(self):
        return self._desc

    @property
    def size(self):
        return self.n

    def sample_state(self, rnd):
        order = list(range(self.n))
        for i in range(self.n - 1, 0, -1):
            j = rnd.randrange(i + 1)
            order[i], order[j] = order[j], order[i]
        s = self.s
        return MatchState.from_edges(self.n, (order[i:i + s] for i in range(0, self.n, s)))

    def check_state(self, state):
        if len(state.part) != self.n:
            raise ContractError("matching has the wrong ground-set size")
        for v, e in enumerate(state.part):
            if len(e) != self.s or v not in e or list(e) != sorted(set(e)):
                raise ContractError(f"vertex {v}: malformed edge {e!r}")
            if any(state.part[u] != e for u in e):
                raise ContractError(f"edge {e!r} is not consistent")

    def check_atom(self, atom):
        try:
            e = tuple(sorted(check_int(v, self.n, "vertex") for v in atom))
        except TypeError:
            raise ContractError(f"matching atom must be a vertex set, got {atom!r}") from None
        if len(e) != self.s or len(set(e)) != self.s:
            raise ContractError(f"matching atom must have {self.s} distinct vertices, got {atom!r}")
        return e

    def holds(self, state, atom):
        return state.part[atom[0]] == atom

    def dependent(self, a, b):
        return a != b and not set(a).isdisjoint(b)

    def atom_keys(self, atom):
        return atom

    def seed_footprint(self, atom, seed):
        return (atom[0],) + tuple(seed)

    def _rows(self, atom, cond):
        if atom in cond:
            allowed = set(atom)
        else:
            used = {v for c in cond for v in c}
            allowed = None if not used else set(range(self.n)) - used
        return allowed

    def sample_seed(self, atom, cond: Sequence = (), rnd=None):
        allowed = self._rows(atom, cond)
        out = []
        for i in range(1, self.s):
            prefix = atom[:i]
            if allowed is None:
                out.append(uniform_excluding(rnd, self.n, prefix))
            else:
                row = sorted(allowed.difference(prefix))
                if not row:
                    raise ContractError("conditioned seed set is empty")
                out.append(row[rnd.randrange(len(row))])
        return tuple(out)

    def seed_distribution(self, atom, cond: Sequence = ()):
        allowed = self._rows(atom, cond)
        if allowed is None:
            allowed = set(range(self.n))
        rows = [sorted(allowed.difference(atom[:i])) for i in range(1, self.s)]
        return uniform_rows(rows)

    def stays(self, atom, other, seed):
        if atom == other:
            return all(z in atom for z in seed)
        if self.dependent(atom, other):
            raise ContractError(f"atoms {atom} and {other} are dependent")
        return all(z not in other for z in seed)

    def apply(self, state, atom, seed):
        return matching_apply(state, atom, seed)

    def apply_many(self, state, steps):
        g: dict = {}
        for atom, seed in steps:
            seed = check_matching_seed(self.n, atom, seed)
            g = compose(_point_map(atom, seed), g)
        return _act(state, g)

    def seed_space_size(self) -> int:
        return falling(self.n - 1, self.s - 1)

    def event_probability(self, atoms):
        k = len(atoms)
        return Fraction(count_matchings(self.n - k * self.s, self.s),
                        count_matchings(self.n, self.s))

    def states(self):
        def rec(rest):
            if not rest:
                yield ()
                return
            first, others = rest[0], rest[1:]
            for comb in itertools.combinations(others, self.s - 1):
                e = (first,) + comb
                left = tuple(v for v in others if v not in comb)
                for tail in rec(left):
                    yield (e,) + tail
        for edges in rec(tuple(range(self.n))):
            yield MatchState.from_edges(self.n, edges)

    def weight(self, state):
        return Fraction(1, count_matchings(self.n, self.s))

    def atoms(self):
        return itertools.combinations(range(self.n), self.s)
