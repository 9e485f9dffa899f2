"""Small helpers shared by the concrete spaces."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..core import ContractError


def uniform_excluding(rnd, n: int, excluded) -> int:
    """Uniform draw from ``range(n)`` minus ``excluded``."""
    excluded = set(excluded)
    free = n - sum(1 for v in excluded if 0 <= v < n)
    if free <= 0:
        raise ContractError("conditioned seed set is empty")
    if len(excluded) * 2 < n:
        while True:
            v = rnd.randrange(n)
            if v not in excluded:
                return v
    choices = [v for v in range(n) if v not in excluded]
    return choices[rnd.randrange(len(choices))]


def uniform_rows(rows: list) -> list:
    """Distribution of independent uniform choices, one per row."""
    out = [((), Fraction(1))]
    for row in rows:
        if not row:
            raise ContractError("conditioned seed set is empty")
        w = Fraction(1, len(row))
        out = [(t + (v,), p * w) for t, p in out for v in row]
    return out


def compose(outer: dict, inner: dict) -> dict:
    """Sparse point map ``outer o inner``; identity outside the keys."""
    out = {}
    for p in set(inner) | set(outer):
        q = inner.get(p, p)
        r = outer.get(q, q)
        if r != p:
            out[p] = r
    return out


def swap_map(a: int, b: int) -> dict:
    return {} if a == b else {a: b, b: a}


def falling(n: int, k: int) -> int:
    return factorial(n) // factorial(n - k)


def check_int(v, n: int, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        try:
            iv = int(v)
        except (TypeError, ValueError):
            raise ContractError(f"{what} must be an integer, got {v!r}") from None
        if iv != v:
            raise ContractError(f"{what} must be an integer, got {v!r}")
        v = iv
    if not 0 <= v < n:
        raise ContractError(f"{what} {v} out of range [0, {n})")
    return v
