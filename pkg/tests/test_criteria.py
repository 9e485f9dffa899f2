import math

import pytest
from hypothesis import assume, given, strategies as st
from scipy.optimize import brentq

from lopsided import ContractError
from lopsided.criteria import (CriterionInput, check_asymmetric, check_cluster_expansion,
                               check_symmetric, independent_subset_sum,
                               uniform_cluster_feasible, uniform_cluster_root,
                               work_factor_truncated)


def test_symmetric_examples():
    assert check_symmetric(0.3, 4, 0) == (True, 0.0)
    ok, w = check_symmetric(0.01, 10, 100, 0.0)
    assert ok and w == pytest.approx(math.e)
    assert not check_symmetric(0.1, 5, 10, 0.0)[0]


def test_asymmetric_examples():
    assert check_asymmetric(CriterionInput([], []), []) == (True, 0)
    ok, w = check_asymmetric(CriterionInput([0.3], [[]]), [0.3])
    assert ok and w == pytest.approx(3 / 7)
    assert not check_asymmetric(CriterionInput([0.5], [[]]), [0.4])[0]


def test_cluster_examples():
    inp = CriterionInput([0.2], [[]])
    assert check_cluster_expansion(inp, [0.25])[0]
    assert not check_cluster_expansion(inp, [0.0])[0]


def test_input_validation():
    with pytest.raises(ContractError):
        CriterionInput([0.1, 0.1], [[1], []])
    with pytest.raises(ContractError):
        CriterionInput([1.0], [[]])
    with pytest.raises(ContractError):
        CriterionInput([0.1], [[]], epsilon=-1)


def test_independent_subset_sum_path():
    # Path a - b - c: subsets {}, a, b, c, ac.
    adj = [frozenset({0, 1}), frozenset({0, 1, 2}), frozenset({1, 2})]
    mu = [0.1, 0.2, 0.3]
    assert independent_subset_sum([0, 1, 2], adj, mu) == pytest.approx(1 + 0.6 + 0.03)


def test_work_factor_geometric():
    total, conv = work_factor_truncated(CriterionInput([0.25], [[]], 0.0), size_cap=40)
    assert conv and total == pytest.approx(1 / 3, rel=1e-9)
    total, _ = work_factor_truncated(CriterionInput([0.25, 0.1], [[], []], 0.0), size_cap=40)
    assert total == pytest.approx(1 / 3 + 0.1 / 0.9, rel=1e-9)
    assert work_factor_truncated(CriterionInput([0.0, 0.0], [[], []])) == (0.0, True)


def test_work_factor_uses_slack():
    total, _ = work_factor_truncated(CriterionInput([0.25], [[]], 0.3), size_cap=40)
    q = 0.25 * 1.1
    assert total == pytest.approx(q / (1 - q), rel=1e-9)


@pytest.mark.parametrize("p,c,r", [(1 / 9900, 900, 4), (1 / 97 / 99, 99 * 9, 4),
                                   (12 / (220 * 84), math.comb(11, 2), 6),
                                   (1 / 98 / 99, 4 * 99, 4), (0.01, 10, 4)])
def test_uniform_root_matches_brentq(p, c, r):
    assert uniform_cluster_feasible(p, c, r, 0.01)
    alpha = uniform_cluster_root(p, c, r, 0.01)
    q = p * 1.01
    ref = brentq(lambda a: q * (1 + c * a) ** r - a, 0.0, 1 / (c * (r - 1)), xtol=1e-15)
    assert alpha == pytest.approx(ref, rel=1e-9)
    assert alpha >= q * (1 + c * alpha) ** r * (1 - 1e-12)


def test_uniform_root_infeasible():
    assert not uniform_cluster_feasible(0.1, 10, 4)
    assert uniform_cluster_root(0.1, 10, 4) is None
    assert uniform_cluster_root(0.0, 10, 4) == 0.0


@st.composite
def criterion_inputs(draw, max_m=7):
    m = draw(st.integers(1, max_m))
    adj = [set() for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if draw(st.booleans()):
                adj[i].add(j)
                adj[j].add(i)
    probs = [draw(st.floats(0.0, 0.2)) for _ in range(m)]
    return CriterionInput(probs, adj, draw(st.sampled_from([0.0, 0.1])))


@given(criterion_inputs())
def test_symmetric_implies_asymmetric(inp):
    d = max(len(a) for a in inp.adj)
    p = max(inp.probs)
    assume(check_symmetric(p, d, inp.m, inp.epsilon)[0])
    x = [1 / d if d > 1 else 0.5] * inp.m
    assume(all(v < 1 for v in x))
    if d > 1:
        assert check_asymmetric(inp, x)[0]


@given(criterion_inputs(), st.floats(0.01, 0.5))
def test_asymmetric_implies_cluster(inp, xv):
    x = [xv] * inp.m
    assume(check_asymmetric(inp, x)[0])
    mu = [v / (1 - v) for v in x]
    assert check_cluster_expansion(inp, mu)[0]


@given(criterion_inputs(max_m=5))
def test_work_factor_bounded_by_cluster_weights(inp):
    # A feasible cluster weighting bounds the work factor by its total.
    mu = [3 * p * (1 + inp.epsilon) + 1e-9 for p in inp.probs]
    ok, w = check_cluster_expansion(CriterionInput(inp.probs, inp.adj, inp.epsilon), mu)
    assume(ok)
    total, conv = work_factor_truncated(inp, size_cap=8)
    assert total <= w * (1 + 1e-9)
