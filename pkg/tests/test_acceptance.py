"""Acceptance gate.  One test per shipped guarantee, at full scale.

Run `pytest -v tests/test_acceptance.py` to get one pass or fail line
per criterion.  Each test prints its measured numbers, which pytest
shows for failures (or under -s).
"""

import itertools
import math
import time
from collections import Counter

from rtcnkit import (
    Permutation,
    TranspositionSeq,
    boat_return_experiment,
    boat_to_rtcn,
    contains,
    containing_count,
    cycle_count,
    decisions_from_pair,
    enumerate_boats,
    enumerate_codes,
    enumerate_decisions,
    enumerate_ranked_trees,
    exact_moments,
    expand,
    ks_normal_distance,
    max_rank_return_count,
    pair_to_phylo,
    parse_phylo,
    parse_rtcn,
    perm_to_transpositions,
    phylo_to_pair,
    replacement_steps,
    rt_count,
    rtcn_to_boat,
    rtcn_to_treeperm,
    stirling1,
    transpositions_to_perm,
    treeperm_to_rtcn,
)
from rtcnkit.codecs import format_object, parse_object
from rtcnkit.verify import (
    DEFAULT_SEED,
    GOLDEN_NETWORK,
    GOLDEN_STEPS,
    GOLDEN_TRANSPOSITIONS,
    random_objects,
)

EXPECTED_TOTALS = {2: 1, 3: 6, 4: 108, 5: 4320, 6: 324000}


def test_criterion_1_network_counts_match_closed_form():
    start = time.perf_counter()
    got = {n: sum(1 for _ in enumerate_codes(n)) for n in range(2, 7)}
    elapsed = time.perf_counter() - start
    print(f"criterion 1: totals {got} in {elapsed:.1f}s")
    assert got == EXPECTED_TOTALS
    assert elapsed < 60.0


def test_criterion_2_branching_strata_match_stirling_numbers():
    for n in range(2, 7):
        strata = Counter(c.branching_count for c in enumerate_codes(n))
        want = {b: stirling1(n - 1, b) * rt_count(n) for b in range(1, n)}
        want = {b: v for b, v in want.items() if v}
        assert dict(strata) == want
    print("criterion 2: strata exact for 2..6 leaves")


def test_criterion_3_boat_bijection_on_small_sizes():
    for n in range(2, 6):
        image = {}
        for code in enumerate_codes(n):
            boat = rtcn_to_boat(code)
            assert boat_to_rtcn(boat) == code
            assert code.branching_count == max_rank_return_count(boat) + 1
            assert boat not in image
            image[boat] = code
        assert set(image) == set(enumerate_boats(n))
    print("criterion 3: boat bijection exact for 2..5 leaves")


def test_criterion_4_tree_permutation_bijection_and_golden_case():
    for n in range(2, 6):
        for code in enumerate_codes(n):
            tree, perm = rtcn_to_treeperm(code)
            assert treeperm_to_rtcn(tree, perm) == code
            assert cycle_count(perm) == (n - 1) - code.reticulation_count
        for tree in enumerate_ranked_trees(n):
            for img in itertools.permutations(range(1, n)):
                perm = Permutation(n - 1, img)
                code = treeperm_to_rtcn(tree, perm)
                assert rtcn_to_treeperm(code) == (tree, perm)
    golden = parse_rtcn(GOLDEN_NETWORK)
    _, steps = replacement_steps(golden)
    assert [s.as_tuple() for s in steps] == GOLDEN_STEPS
    _, perm = rtcn_to_treeperm(golden)
    assert perm_to_transpositions(perm).pairs == GOLDEN_TRANSPOSITIONS
    assert perm == transpositions_to_perm(
        TranspositionSeq(5, GOLDEN_TRANSPOSITIONS))
    print(f"criterion 4: round trips for 2..5 leaves; "
          f"pinned case gives {perm.cycle_string()}")


def test_criterion_5_transposition_factorization_is_unique():
    for n in range(1, 7):
        for img in itertools.permutations(range(1, n + 1)):
            perm = Permutation(n, img)
            seq = perm_to_transpositions(perm)
            assert transpositions_to_perm(seq) == perm
            assert len(seq.pairs) == n - cycle_count(perm)
    for n in range(2, 6):
        domains = [[None] + [(x, y) for y in range(x + 1, n + 1)]
                   for x in range(1, n)]
        products = [transpositions_to_perm(
            TranspositionSeq(n, tuple(p for p in picks if p)))
            for picks in itertools.product(*domains)]
        assert len(products) == math.factorial(n)
        assert len(set(products)) == math.factorial(n)
    print("criterion 5: factorization bijective, degrees 1..6")


def _all_phylo_shapes(leaves):
    # grow by attaching each new leaf on every edge, root edge included
    def attach(shape, leaf):
        out = [tuple(sorted((shape, leaf), key=_min_leaf))]
        if isinstance(shape, tuple):
            left, right = shape
            out += [tuple(sorted((s, right), key=_min_leaf))
                    for s in attach(left, leaf)]
            out += [tuple(sorted((left, s), key=_min_leaf))
                    for s in attach(right, leaf)]
        return out

    def _min_leaf(s):
        while isinstance(s, tuple):
            s = s[0]
        return s

    shapes = [1]
    for leaf in range(2, leaves + 1):
        shapes = [s for old in shapes for s in attach(old, leaf)]
    return shapes


def _shape_text(shape):
    if isinstance(shape, int):
        return str(shape)
    return "(" + ",".join(_shape_text(c) for c in shape) + ")"


def test_criterion_6_containment_expansion_and_phylo_bijection():
    start = time.perf_counter()
    for n in range(2, 6):
        want = containing_count(n)
        all_phylos = {parse_phylo(_shape_text(s) + ";")
                      for s in _all_phylo_shapes(n)}
        assert len(all_phylos) == want
        for tree in enumerate_ranked_trees(n):
            nets = {}
            phylos = set()
            for dec in enumerate_decisions(n):
                net = expand(tree, dec)
                assert net not in nets
                nets[net] = dec
                assert contains(tree, net, method="oracle")
                assert decisions_from_pair(tree, net) == dec
                phylo = pair_to_phylo(tree, net)
                assert phylo_to_pair(tree, phylo) == net
                phylos.add(phylo)
            assert len(nets) == want
            assert phylos == all_phylos
    tree4 = next(enumerate_ranked_trees(4))
    count4 = sum(1 for _ in enumerate_decisions(4))
    assert count4 == 15
    assert sum(1 for _ in enumerate_decisions(tree4.leaves)) == 15
    elapsed = time.perf_counter() - start
    print(f"criterion 6: containment bijections exact for 2..5 leaves, "
          f"15 networks per 4-leaf tree, {elapsed:.1f}s")
    assert elapsed < 120.0


def test_criterion_7_return_count_normal_approximation():
    leaves, count, seed = 10 ** 4, 10 ** 5, DEFAULT_SEED
    start = time.perf_counter()
    xs = boat_return_experiment(leaves, count, seed)
    mean_b, var_b = exact_moments(leaves)
    exact_mean, exact_var = float(mean_b - 1), float(var_b)
    sample_mean = sum(xs) / count
    sample_var = sum((x - sample_mean) ** 2 for x in xs) / (count - 1)
    sd = math.sqrt(exact_var)
    ks = ks_normal_distance(
        [(x - exact_mean) / sd for x in xs], 0.0, 1.0)
    elapsed = time.perf_counter() - start
    print(f"criterion 7: mean {sample_mean:.5f} vs {exact_mean:.5f}, "
          f"variance {sample_var:.5f} vs {exact_var:.5f}, "
          f"ks {ks:.5f}, {elapsed:.1f}s")
    assert elapsed < 60.0
    failures = []
    if abs(sample_mean - exact_mean) > 4.0 * math.sqrt(exact_var / count):
        failures.append(f"mean {sample_mean} vs {exact_mean}")
    if abs(sample_var - exact_var) > 0.10 * exact_var:
        failures.append(f"variance {sample_var} vs {exact_var}")
    if ks > 0.05:
        failures.append(f"ks distance {ks:.5f} > 0.05")
    assert not failures, "; ".join(failures)


def test_criterion_8_codec_round_trips_byte_identical():
    start = time.perf_counter()
    total = 0
    for obj in random_objects(10 ** 5, DEFAULT_SEED):
        text = format_object(obj)
        back = parse_object(text)
        assert back == obj
        assert format_object(back) == text
        total += 1
    elapsed = time.perf_counter() - start
    assert total == 10 ** 5
    print(f"criterion 8: {total} objects byte-stable in {elapsed:.1f}s")
