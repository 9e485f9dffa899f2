"""Concrete probability spaces with oblivious resampling oracles."""

from ..core import ContractError, SpaceDescriptor
from .hamcycle import HamCycleSpace, cycle_from_order, cycle_order, ham_apply, ham_t_set_size
from .matching import MatchingSpace, MatchState, count_matchings, matching_apply
from .permutation import PermState, PermutationSpace, perm_seed_stays
from .product import ProductSpace
from .variables import VariableSpace

__all__ = [
    "HamCycleSpace", "MatchingSpace", "MatchState", "PermState", "PermutationSpace",
    "ProductSpace", "VariableSpace", "count_matchings", "cycle_from_order", "cycle_order",
    "ham_apply", "ham_t_set_size", "matching_apply", "perm_seed_stays",
    "space_from_descriptor",
]


def space_from_descriptor(desc: SpaceDescriptor):
    if desc.kind == "permutation":
        return PermutationSpace(desc.n)
    if desc.kind == "matching":
        return MatchingSpace(desc.n, desc.s)
    if desc.kind == "hamcycle":
        return HamCycleSpace(desc.n)
    if desc.kind == "variables":
        return VariableSpace(desc.domains)
    if desc.kind == "product":
        return ProductSpace([space_from_descriptor(c) for c in desc.components])
    raise ContractError(f"unknown space kind {desc.kind!r}")
