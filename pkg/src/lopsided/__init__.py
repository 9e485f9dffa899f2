"""Resampling engine for lopsided local-lemma problems, sequential and parallel."""

from .core import (BadEvent, ContractError, Space, SpaceDescriptor, apply_event_seed,
                   atoms_dependent, event_holds, events_dependent, make_event,
                   sample_event_seed, sample_state, seed_stays_in)
from .rng import Streams

__version__ = "0.1.0"

__all__ = [
    "BadEvent", "ContractError", "Space", "SpaceDescriptor", "Streams", "apply_event_seed",
    "atoms_dependent", "event_holds", "events_dependent", "make_event",
    "sample_event_seed", "sample_state", "seed_stays_in",
]
