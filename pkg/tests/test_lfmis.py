import numpy as np
import pytest
from hypothesis import given, strategies as st

from lopsided import ContractError
from lopsided.lfmis import (Digraph, lfmis_parallel, lfmis_round_stats, lfmis_sequential,
                            random_digraph)


def test_sequential_examples():
    assert lfmis_sequential(Digraph.from_edges(3, [(0, 1), (1, 2)])) == {0, 2}
    assert lfmis_sequential(Digraph.from_edges(2, [(1, 0)])) == {0, 1}
    assert lfmis_sequential(Digraph.from_edges(4, [])) == {0, 1, 2, 3}


def test_parallel_examples():
    assert lfmis_parallel(Digraph.from_edges(3, [(0, 1), (1, 2)])) == ({0, 2}, 2)
    assert lfmis_parallel(Digraph.from_edges(4, [])) == ({0, 1, 2, 3}, 1)
    assert lfmis_parallel(Digraph.from_edges(2, [(1, 0)])) == ({0, 1}, 1)
    assert lfmis_parallel(Digraph.from_edges(0, [])) == (set(), 0)


def test_digraph_validation():
    with pytest.raises(ContractError):
        Digraph.from_edges(2, [(0, 0)])
    with pytest.raises(ContractError):
        Digraph.from_edges(2, [(0, 2)])
    g = Digraph.from_edges(3, [(0, 1), (0, 1)])
    assert g.edges == [(0, 1)]


def test_chain_is_worst_case_for_rounds():
    n = 40
    g = Digraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    got, rounds = lfmis_parallel(g)
    assert got == set(range(0, n, 2)) == lfmis_sequential(g)
    assert rounds == n // 2


def test_order_is_respected():
    g = Digraph.from_edges(3, [(0, 1), (1, 2)])
    assert lfmis_sequential(g, [2, 1, 0]) == {0, 1, 2}
    assert lfmis_parallel(g, [1, 0, 2])[0] == lfmis_sequential(g, [1, 0, 2]) == {0, 1}


@st.composite
def digraphs(draw):
    n = draw(st.integers(0, 30))
    pairs = st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0)))
    edges = [e for e in draw(st.lists(pairs, max_size=80)) if e[0] != e[1]] if n else []
    order = draw(st.permutations(range(n)))
    return Digraph.from_edges(n, edges), list(order)


@given(digraphs())
def test_parallel_equals_sequential(case):
    g, order = case
    got, rounds = lfmis_parallel(g, order)
    assert got == lfmis_sequential(g, order)
    assert rounds <= max(g.n, 0)


@given(digraphs())
def test_output_is_independent_and_maximal_in_the_greedy_sense(case):
    g, order = case
    got = lfmis_sequential(g, order)
    pos = {v: i for i, v in enumerate(order)}
    for u, v in g.edges:
        # An earlier chosen vertex kills its out-neighbours.
        if u in got and pos[u] < pos[v]:
            assert v not in got
    for v in set(range(g.n)) - got:
        assert any(u in got and pos[u] < pos[v] for u, w in g.edges if w == v)


def test_random_digraph_density():
    gen = np.random.default_rng(0)
    g = random_digraph(200, 0.1, gen)
    assert abs(len(g.edges) - 0.1 * 200 * 199) < 600
    big = random_digraph(3000, 0.001, gen)
    assert big.n == 3000 and len(big.edges) > 0


def test_round_stats_single_vertex():
    out = lfmis_round_stats(1, 0.5, 5, 0)
    assert out["rounds"] == [1] * 5 and out["median"] == 1


def test_round_stats_deterministic():
    assert lfmis_round_stats(300, 0.02, 4, 9) == lfmis_round_stats(300, 0.02, 4, 9)
