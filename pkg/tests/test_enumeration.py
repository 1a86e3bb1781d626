"""Counting formulas, enumerators, growth operations, and the sampler."""

import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from conftest import event_codes
from rtcnkit import (
    Branching,
    GrowBranching,
    GrowReticulation,
    Reticulation,
    apply_growth,
    containing_count,
    enumerate_codes,
    enumerate_growth_ops,
    enumerate_ranked_trees,
    rt_count,
    rtc_count,
    rtc_count_by_branching,
    sample_uniform,
    stirling1,
    strip_bottom,
    validate_code,
)
from rtcnkit.stats import CHI2_CRIT_P001, chi_square_stat

NETWORK_COUNTS = {2: 1, 3: 6, 4: 108, 5: 4320, 6: 324000}
TREE_COUNTS = {2: 1, 3: 3, 4: 18, 5: 180, 6: 2700}


def test_closed_form_counts():
    for n, want in NETWORK_COUNTS.items():
        assert rtc_count(n) == want
    for n, want in TREE_COUNTS.items():
        assert rt_count(n) == want
    # growth factor between consecutive sizes
    for n in range(2, 30):
        assert rtc_count(n + 1) == rtc_count(n) * (n + 1) * n * n // 2


def test_stirling_numbers():
    # signless first kind: rows 0..5
    rows = [
        [1],
        [0, 1],
        [0, 1, 1],
        [0, 2, 3, 1],
        [0, 6, 11, 6, 1],
        [0, 24, 50, 35, 10, 1],
    ]
    for n, row in enumerate(rows):
        for k, want in enumerate(row):
            assert stirling1(n, k) == want
    # row sums are factorials
    for n in range(8):
        assert sum(stirling1(n, k) for k in range(n + 1)) == math.factorial(n)


def test_stratified_counts_sum():
    for n in range(2, 31):
        assert sum(rtc_count_by_branching(n, b) for b in range(1, n)) == rtc_count(n)
    assert rtc_count_by_branching(4, 3) == 18


def test_enumeration_matches_counts():
    for n in range(2, 6):
        codes = list(enumerate_codes(n))
        assert len(codes) == rtc_count(n)
        assert len(set(codes)) == len(codes)
        assert all(validate_code(c) == [] for c in codes)
        strata = Counter(c.branching_count for c in codes)
        for b in range(1, n):
            assert strata.get(b, 0) == rtc_count_by_branching(n, b)
        trees = list(enumerate_ranked_trees(n))
        assert len(trees) == rt_count(n)
        assert set(trees) == {c for c in codes if c.is_ranked_tree}


def test_enumeration_is_sorted():
    codes = list(enumerate_codes(4))
    assert codes == sorted(codes, key=lambda c: c.sort_key())


def test_containing_count():
    assert [containing_count(n) for n in range(2, 7)] == [1, 3, 15, 105, 945]


def test_growth_ops_reach_every_larger_code():
    # every code on n+1 leaves arises from exactly one (code, op) pair
    for n in (2, 3):
        seen = Counter()
        ops = list(enumerate_growth_ops(n))
        for code in enumerate_codes(n):
            assert len(ops) == (n + 1) * n * n // 2
            for op in ops:
                grown = apply_growth(code, op)
                assert validate_code(grown) == []
                assert strip_bottom(grown) == (code, op)
                seen[grown] += 1
        assert all(v == 1 for v in seen.values())
        assert len(seen) == rtc_count(n + 1)


def test_growth_frozen_example():
    cherry = next(iter(enumerate_codes(2)))
    grown = apply_growth(cherry, GrowBranching(1, 3))
    assert grown.events[0] == Branching(1, 3)
    retic = apply_growth(cherry, GrowReticulation(1, 2, 3))
    assert retic.events[0] == Reticulation(1, 2, 3)
    assert retic.leaves == 3


def test_sampler_is_uniform_at_three_leaves():
    codes = list(enumerate_codes(3))
    rng = random.Random(20240825)
    counts = Counter(sample_uniform(3, rng=rng) for _ in range(60000))
    freqs = [counts[c] / 60000 for c in codes]
    assert all(abs(f - 1 / 6) < 0.01 for f in freqs)


def test_sampler_branching_distribution_at_four_leaves():
    rng = random.Random(7)
    counts = Counter(sample_uniform(4, rng=rng).branching_count
                     for _ in range(30000))
    probs = [rtc_count_by_branching(4, b) / 108 for b in range(1, 4)]
    chi = chi_square_stat([counts.get(b, 0) for b in range(1, 4)], probs)
    assert chi < CHI2_CRIT_P001[2]


def test_sampler_rejects_degenerate_sizes():
    with pytest.raises(ValueError):
        sample_uniform(1, seed=0)


@settings(max_examples=50, deadline=None)
@given(event_codes(min_leaves=2, max_leaves=6),
       st.data())
def test_growth_strip_round_trip_property(code, data):
    ops = list(enumerate_growth_ops(code.leaves))
    op = data.draw(st.sampled_from(ops))
    grown = apply_growth(code, op)
    assert strip_bottom(grown) == (code, op)
