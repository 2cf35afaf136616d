import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scrambler.voting import compute_risk, majority_vote

LEVELS = (3, 5, 7, 9, 11)


def oracle_vote(replicas):
    # brute force: count every value by scanning the whole list
    best_value, best_count = None, 0
    for v in replicas:
        c = sum(1 for w in replicas if w == v)
        if c > best_count:
            best_value, best_count = v, c
    majority = best_value if 2 * best_count > len(replicas) else None
    return majority, best_count


@pytest.mark.parametrize(
    "replicas, value, m",
    [
        ((5, 5, 5), 5, 3),
        ((5, 5, 9, 9, 5), 5, 3),
        ((1, 2, 3, 4, 5), None, 1),
        ((7, 7, 7, 9, 4), 7, 3),
        ((1, 2, 3), None, 1),
    ],
)
def test_vote_examples(replicas, value, m):
    res = majority_vote(replicas)
    assert res.majority_value == value
    assert res.m == m
    assert res.k == len(replicas)


@pytest.mark.parametrize("bad", [(), (1,), (1, 2), (1, 1, 1, 1), tuple(range(13))])
def test_vote_rejects_bad_length(bad):
    with pytest.raises(ValueError):
        majority_vote(bad)


@pytest.mark.parametrize("k", [3, 5, 7])
def test_vote_matches_oracle_exhaustively(k):
    for combo in itertools.product((0, 1, 2), repeat=k):
        res = majority_vote(combo)
        value, m = oracle_vote(combo)
        assert (res.majority_value, res.m) == (value, m), combo


@given(st.sampled_from(LEVELS).flatmap(
    lambda k: st.lists(st.integers(0, 0xFFFFFFFF), min_size=k, max_size=k)))
def test_vote_invariants(replicas):
    res = majority_vote(replicas)
    k = len(replicas)
    assert 1 <= res.m <= k
    assert (res.majority_value is not None) == (res.m > k // 2)
    assert res.m == max(replicas.count(v) for v in replicas)


def test_risk_worked_example():
    assert compute_risk(7, 6).fraction == Fraction(1, 3)


@pytest.mark.parametrize("k, m, expected", [(3, 3, 0), (5, 2, 1), (7, 6, Fraction(1, 3)), (3, 2, 1)])
def test_risk_examples(k, m, expected):
    assert compute_risk(k, m).fraction == expected


@pytest.mark.parametrize("k, m", [(4, 2), (1, 1), (3, 0), (3, 4), (5, -1)])
def test_risk_rejects_bad_input(k, m):
    with pytest.raises(ValueError):
        compute_risk(k, m)


@pytest.mark.parametrize("k", LEVELS)
def test_risk_shape(k):
    n = (k - 1) // 2
    rs = [compute_risk(k, m).fraction for m in range(1, k + 1)]
    assert all(0 <= r <= 1 for r in rs)
    assert all(a >= b for a, b in zip(rs, rs[1:]))
    assert [r == 0 for r in rs] == [m == k for m in range(1, k + 1)]
    assert compute_risk(k, n + 1).fraction == 1
    for m in range(n + 1, k):
        assert compute_risk(k, m).fraction - compute_risk(k, m + 1).fraction == Fraction(1, n)


def test_threshold_is_strict_and_exact():
    # k=5, m=4 gives exactly 1/2: not above 0.5
    half = compute_risk(5, 4)
    assert half.fraction == Fraction(1, 2)
    assert not half.exceeds(0.5)
    assert compute_risk(5, 3).exceeds(0.5)
    assert float(compute_risk(7, 6)) == pytest.approx(1 / 3)
