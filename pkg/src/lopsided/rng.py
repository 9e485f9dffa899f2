"""Keyed, splittable random streams.

Every random decision in the engine is drawn from a stream identified by a
key tuple, e.g. ``("seed", round, event_id)``.  Two computations that ask for
the same key under the same master seed see identical numbers, regardless of
the order in which streams are requested or how work is split across
threads.
"""

from __future__ import annotations

import hashlib
import random
from typing import Hashable


def _derive(master: int, key: tuple) -> int:
    h = hashlib.blake2b(repr((master,) + key).encode(), digest_size=16)
    return int.from_bytes(h.digest(), "big")


class Streams:
    """Factory of independent ``random.Random`` generators keyed by tuples.

    >>> s = Streams(7)
    >>> s.get("a", 1).random() == Streams(7).get("a", 1).random()
    True
    """

    __slots__ = ("master",)

    def __init__(self, master: int = 0):
        if isinstance(master, Streams):
            master = master.master
        self.master = int(master)

    def get(self, *key: Hashable) -> random.Random:
        return random.Random(_derive(self.master, key))

    def child(self, *key: Hashable) -> "Streams":
        """A new factory whose streams are disjoint from this one's."""
        return Streams(_derive(self.master, ("child",) + key) & ((1 << 63) - 1))

    def __repr__(self) -> str:
        return f"Streams({self.master})"


def as_streams(rng) -> Streams:
    """Accept a master seed, a ``Streams`` or ``None`` (seed 0)."""
    if rng is None:
        return Streams(0)
    if isinstance(rng, Streams):
        return rng
    return Streams(int(rng))


def shuffled(items, rnd: random.Random) -> list:
    """Fisher-Yates shuffle driven by ``rnd``; returns a new list."""
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = rnd.randrange(i + 1)
        out[i], out[j] = out[j], out[i]
    return out
