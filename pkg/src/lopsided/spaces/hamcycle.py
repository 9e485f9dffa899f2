"""Uniform Hamiltonian cycles of the complete digraph on ``range(n)``.

A state is the successor table of a single n-cycle.  The atom
``q = (x_1, ..., x_k)`` is the event that the cycle contains the path q.
Resampling maps ``pi`` to ``sigma lam pi`` where ``lam`` sends
``x_k -> x_{k-1} -> ... -> x_1 -> x_k`` and
``sigma = (x_{k-1} z_{k-1}) ... (x_1 z_1)`` with
``z_i`` outside ``{x_i, ..., x_{k-1}}``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Sequence

from ..core import ContractError, Space, SpaceDescriptor
from ._util import check_int, compose, uniform_excluding, uniform_rows


def ham_t_set_size(n: int, k: int) -> int:
    """Number of permutations ``(x_k z_k) ... (x_1 z_1)`` for a k-set."""
    if not 1 <= k <= n - 1:
        raise ContractError(f"k must lie in [1, n-1], got k={k} n={n}")
    return factorial(n - 1) // factorial(n - k - 1)


def check_ham_seed(n: int, q: tuple, z) -> tuple:
    try:
        z = tuple(z)
    except TypeError:
        raise ContractError(f"cycle seed must be a sequence, got {z!r}") from None
    if len(z) != len(q) - 1:
        raise ContractError(f"cycle seed needs {len(q) - 1} entries, got {len(z)}")
    for i, zi in enumerate(z):
        check_int(zi, n, "seed entry")
        if zi in q[i:len(q) - 1]:
            raise ContractError(f"seed entry z_{i + 1}={zi} must avoid {q[i:len(q) - 1]}")
    return z


def _lam(q: tuple) -> dict:
    k = len(q)
    g = {q[i]: q[i - 1] for i in range(1, k)}
    g[q[0]] = q[-1]
    return g


def _sigma(q: tuple, z: tuple) -> dict:
    g: dict = {}
    for i, zi in enumerate(z):
        if zi != q[i]:
            g = compose({q[i]: zi, zi: q[i]}, g)
    return g


def _step_map(q: tuple, z: tuple) -> dict:
    return compose(_sigma(q, z), _lam(q))


def _left_mul(succ: tuple, g: dict) -> tuple:
    if not g:
        return succ
    return tuple(g.get(w, w) for w in succ)


def ham_apply(pi: tuple, q: tuple, seed) -> tuple:
    """Resample the path ``q`` on the successor table ``pi``."""
    seed = check_ham_seed(len(pi), q, seed)
    return _left_mul(tuple(pi), _step_map(q, seed))


def cycle_from_order(order) -> tuple:
    order = list(order)
    succ = [0] * len(order)
    for i, v in enumerate(order):
        succ[v] = order[(i + 1) % len(order)]
    return tuple(succ)


def cycle_order(succ, start: int = 0) -> list:
    out = [start]
    v = succ[start]
    while v != start and len(out) <= len(succ):
        out.append(v)
        v = succ[v]
    return out


class HamCycleSpace(Space):
    def __init__(self, n: int, max_atom_len: int | None = None):
        self._desc = SpaceDescriptor("hamcycle", n=n)
        self.n = n
        self.max_atom_len = n if max_atom_len is None else max_atom_len

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
        return cycle_from_order(order)

    def check_state(self, state):
        if sorted(state) != list(range(self.n)):
            raise ContractError("successor table is not a bijection")
        if len(cycle_order(state)) != self.n or state[cycle_order(state)[-1]] != 0:
            raise ContractError("successor table is not a single n-cycle")

    def check_atom(self, atom):
        try:
            q = tuple(check_int(v, self.n, "vertex") for v in atom)
        except TypeError:
            raise ContractError(f"path atom must be a vertex sequence, got {atom!r}") from None
        if len(q) < 2 or len(set(q)) != len(q):
            raise ContractError(f"path atom needs >= 2 distinct vertices, got {atom!r}")
        return q

    def holds(self, state, atom):
        return all(state[atom[i]] == atom[i + 1] for i in range(len(atom) - 1))

    def dependent(self, a, b):
        return not set(a).isdisjoint(b)

    def atom_keys(self, atom):
        return atom

    def seed_footprint(self, atom, seed):
        return tuple(seed)

    def _hidden(self, cond):
        return {v for c in cond for v in c[1:]}

    def sample_seed(self, atom, cond: Sequence = (), rnd=None):
        hidden = self._hidden(cond)
        k = len(atom)
        return tuple(uniform_excluding(rnd, self.n, hidden.union(atom[i:k - 1]))
                     for i in range(k - 1))

    def seed_distribution(self, atom, cond: Sequence = ()):
        hidden = self._hidden(cond)
        k = len(atom)
        rows = [[v for v in range(self.n) if v not in hidden and v not in atom[i:k - 1]]
                for i in range(k - 1)]
        return uniform_rows(rows)

    def stays(self, atom, other, seed):
        if self.dependent(atom, other):
            raise ContractError(f"paths {atom} and {other} are dependent")
        fin = set(other[1:])
        return not any(z in fin for z in seed)

    def apply(self, state, atom, seed):
        return ham_apply(state, atom, seed)

    def apply_many(self, state, steps):
        g: dict = {}
        for atom, seed in steps:
            seed = check_ham_seed(self.n, atom, seed)
            g = compose(_step_map(atom, seed), g)
        return _left_mul(state, g)

    def event_probability(self, atoms):
        used = sum(len(q) - 1 for q in atoms)
        if used > self.n - 1:
            return Fraction(0)
        return Fraction(factorial(self.n - used - 1), factorial(self.n - 1))

    def states(self):
        for rest in itertools.permutations(range(1, self.n)):
            yield cycle_from_order((0,) + rest)

    def weight(self, state):
        return Fraction(1, factorial(self.n - 1))

    def atoms(self, max_len: int | None = None):
        top = self.max_atom_len if max_len is None else max_len
        for k in range(2, min(top, self.n) + 1):
            yield from itertools.permutations(range(self.n), k)
