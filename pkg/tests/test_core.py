from collections import Counter
from fractions import Fraction

import pytest

from lopsided import (BadEvent, ContractError, SpaceDescriptor, apply_event_seed,
                      atoms_dependent, event_holds, events_dependent, make_event,
                      sample_event_seed, sample_state, seed_stays_in)
from lopsided.core import event_probability, event_seed_distribution
from lopsided.rng import Streams
from lopsided.spaces import (HamCycleSpace, MatchingSpace, MatchState, PermState,
                             PermutationSpace, VariableSpace)

# Ground sets are 0-based: the 1-based vertex v is written v - 1.


def test_descriptor_validation():
    with pytest.raises(ContractError):
        SpaceDescriptor("matching", n=5, s=2)
    with pytest.raises(ContractError):
        SpaceDescriptor("permutation", n=1)
    with pytest.raises(ContractError):
        SpaceDescriptor("nonsense", n=3)
    assert SpaceDescriptor("matching", n=6, s=3).label() == "K_6^(3)"


def test_atoms_dependent_examples():
    v = VariableSpace.uniform(2, 2)
    assert atoms_dependent(v, (0, 0), (0, 1))
    p = PermutationSpace(3)
    assert not atoms_dependent(p, (0, 1), (0, 1))
    h = HamCycleSpace(5)
    assert atoms_dependent(h, (0, 1, 2), (2, 3))


def test_events_dependent_examples():
    p = PermutationSpace(5)
    assert not events_dependent(p, make_event(p, [(0, 1)]), make_event(p, [(2, 3)]))
    assert events_dependent(p, make_event(p, [(0, 1), (2, 3)]), make_event(p, [(2, 4)]))
    b = make_event(p, [(0, 1)])
    assert not events_dependent(p, b, b)


def test_event_holds_examples():
    p = PermutationSpace(3)
    pi = PermState([1, 0, 2])
    assert event_holds(p, pi, make_event(p, [(0, 1)]))
    assert not event_holds(p, pi, make_event(p, [(0, 1), (1, 2)]))
    assert event_holds(p, pi, make_event(p, []))


def test_event_rejects_dependent_atoms():
    p = PermutationSpace(4)
    with pytest.raises(ContractError):
        make_event(p, [(0, 1), (0, 2)])


def test_event_atoms_are_canonical():
    p = PermutationSpace(4)
    assert make_event(p, [(2, 3), (0, 1), (2, 3)]).atoms == ((0, 1), (2, 3))


def test_lifted_seed_distribution_two_atoms():
    p = PermutationSpace(5)
    b = make_event(p, [(0, 1), (2, 3)])
    dist = event_seed_distribution(p, b)
    # The first component avoids the value held by the later atom.
    assert {y[0] for y, _ in dist} == {0, 1, 2, 4}
    assert {y[1] for y, _ in dist} == set(range(5))
    assert sum(w for _, w in dist) == 1
    for _ in range(50):
        z1, z2 = sample_event_seed(p, b, Streams(1).get("s", _))
        assert z1 != 3


def test_variable_seed_is_fresh_value():
    v = VariableSpace([[Fraction(1, 4), Fraction(3, 4)]] * 4)
    b = make_event(v, [(2, 1)])
    dist = dict(event_seed_distribution(v, b))
    assert dist == {(0,): Fraction(1, 4), (1,): Fraction(3, 4)}


def test_apply_examples():
    p = PermutationSpace(3)
    pi = PermState([1, 0, 2])
    b = make_event(p, [(0, 1)])
    assert apply_event_seed(p, pi, b, (1,)) == pi
    assert apply_event_seed(p, pi, b, (2,)).fwd == (2, 0, 1)
    m = MatchingSpace(4)
    M = MatchState.from_edges(4, [(0, 1), (2, 3)])
    e = make_event(m, [(0, 1)])
    assert set(apply_event_seed(m, M, e, ((2,),)).edges()) == {(0, 2), (1, 3)}
    with pytest.raises(ContractError):
        apply_event_seed(p, pi, b, (1, 2))


def test_seed_stays_in_examples():
    p = PermutationSpace(5)
    b, b2 = make_event(p, [(0, 1)]), make_event(p, [(2, 3)])
    assert not seed_stays_in(p, b, b2, (3,))
    assert seed_stays_in(p, b, b, (1,))
    m = MatchingSpace(4)
    assert not seed_stays_in(m, make_event(m, [(0, 1)]), make_event(m, [(2, 3)]), ((2,),))
    with pytest.raises(ContractError):
        seed_stays_in(p, b, make_event(p, [(0, 2)]), (3,))


def test_sample_state_trivial_spaces():
    v = VariableSpace([[Fraction(1)]] * 3)
    assert list(sample_state(v, Streams(0).get("x"))) == [0, 0, 0]
    m = MatchingSpace(3, 3)
    assert sample_state(m, Streams(0).get("x")).edges() == ((0, 1, 2),)


def test_s3_sampling_is_uniform():
    p = PermutationSpace(3)
    rnd = Streams(11).get("u")
    draws = 60000
    counts = Counter(sample_state(p, rnd).fwd for _ in range(draws))
    mean = draws / 6
    sd = (draws * (1 / 6) * (5 / 6)) ** 0.5
    assert len(counts) == 6
    assert all(abs(c - mean) <= 4 * sd for c in counts.values())


def test_event_probability_matches_enumeration():
    p = PermutationSpace(4)
    b = make_event(p, [(0, 1), (2, 3)])
    exact = Fraction(sum(event_holds(p, s, b) for s in p.states()), 24)
    assert event_probability(p, b) == exact == Fraction(1, 12)


def test_bad_event_is_frozen():
    b = BadEvent(0, ((0, 1),))
    with pytest.raises(AttributeError):
        b.id = 2
