"""Containment reduction, expansion, and the plain-tree bijection."""

import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from conftest import ranked_tree_codes
from rtcnkit import (
    DecisionVector,
    KEEP,
    ValidationError,
    containing_count,
    contains,
    decisions_from_pair,
    decisions_to_history,
    enumerate_codes,
    enumerate_decisions,
    enumerate_ranked_trees,
    expand,
    history_to_decisions,
    label_phylo,
    pair_to_phylo,
    parse_decisions,
    parse_phylo,
    parse_rtcn,
    phylo_to_pair,
    reduce_by_choice,
    validate_code,
)


def test_enumerate_decisions_counts():
    for n in range(2, 7):
        decs = list(enumerate_decisions(n))
        assert len(decs) == containing_count(n)
        assert len(set(decs)) == len(decs)
        assert all(d.entries[0] == KEEP for d in decs)


def test_expand_frozen_example():
    tree = parse_rtcn("rtcn 4: B 1 2; B 2 3; B 1 2")
    net = expand(tree, parse_decisions("dec 4: K (1,L) K"))
    assert net == parse_rtcn("rtcn 4: B 1 2; R 1 3 2; B 1 2")
    assert contains(tree, net)
    assert contains(tree, net, "oracle")
    # keeping everything returns the tree itself
    assert expand(tree, parse_decisions("dec 4: K K K")) == tree


def test_expand_is_injective_with_full_image():
    for n in (3, 4, 5):
        for tree in enumerate_ranked_trees(n):
            nets = [expand(tree, d) for d in enumerate_decisions(n)]
            assert all(validate_code(x) == [] for x in nets)
            assert len(set(nets)) == containing_count(n)
            for d, net in zip(enumerate_decisions(n), nets):
                assert decisions_from_pair(tree, net) == d


def test_reduce_by_choice_inverts_expansion():
    tree = parse_rtcn("rtcn 4: B 1 2; B 2 3; B 1 2")
    net = expand(tree, DecisionVector(4, (KEEP, (1, "L"), (1, "R"))))
    k = net.reticulation_count
    reduced = {reduce_by_choice(net, mask)
               for mask in itertools.product((0, 1), repeat=k)}
    assert tree in reduced
    assert all(t.is_ranked_tree for t in reduced)
    with pytest.raises(ValidationError):
        reduce_by_choice(net, (0,))  # wrong flag count
    with pytest.raises(ValidationError):
        reduce_by_choice(net, (0, 2))


def test_contains_agrees_with_oracle():
    n = 4
    trees = list(enumerate_ranked_trees(n))
    for net in enumerate_codes(n):
        k = net.reticulation_count
        via_reduce = {reduce_by_choice(net, mask)
                      for mask in itertools.product((0, 1), repeat=k)}
        for t in trees:
            want = t in via_reduce
            assert contains(t, net) == want
            assert contains(t, net, "oracle") == want


def test_contains_rejects_mismatched_sizes():
    tree = parse_rtcn("rtcn 3: B 1 3; B 1 2")
    net = parse_rtcn("rtcn 4: B 1 2; R 1 3 2; B 1 2")
    with pytest.raises(ValidationError):
        contains(tree, net)
    with pytest.raises(ValueError):
        contains(tree, parse_rtcn("rtcn 3: R 1 2 3; B 1 2"), "guess")


def test_decisions_history_round_trip():
    for n in (2, 3, 4, 5, 6):
        for dec in enumerate_decisions(n):
            hist = decisions_to_history(dec)
            assert history_to_decisions(hist) == dec
            assert label_phylo(hist.strip()) == hist


def test_history_strip_is_injective():
    for n in (3, 4, 5, 6):
        phylos = {decisions_to_history(d).strip() for d in enumerate_decisions(n)}
        assert len(phylos) == containing_count(n)


def test_pair_phylo_bijection_frozen():
    tree = parse_rtcn("rtcn 4: B 1 2; B 2 3; B 1 2")
    net = parse_rtcn("rtcn 4: B 1 2; R 1 3 2; B 1 2")
    p = pair_to_phylo(tree, net)
    assert p == parse_phylo("(((1,3),2),4);")
    assert phylo_to_pair(tree, p) == net
    # keeping every event pairs the tree with the caterpillar history
    assert pair_to_phylo(tree, tree) == parse_phylo("(((1,2),3),4);")


def test_pair_phylo_bijection_exhaustive():
    for n in (3, 4):
        for tree in enumerate_ranked_trees(n):
            seen = set()
            for dec in enumerate_decisions(n):
                net = expand(tree, dec)
                p = pair_to_phylo(tree, net)
                assert phylo_to_pair(tree, p) == net
                seen.add(p)
            assert len(seen) == containing_count(n)


def test_decode_rejects_unrelated_pairs():
    # both trees on 3 leaves, but the network expands only one of them
    t1 = parse_rtcn("rtcn 3: B 1 3; B 1 2")
    t2 = parse_rtcn("rtcn 3: B 2 3; B 1 2")
    net = expand(t1, DecisionVector(3, (KEEP, (1, "L"))))
    assert contains(t1, net)
    assert not contains(t2, net)
    with pytest.raises(ValidationError):
        decisions_from_pair(t2, net)


def test_containment_count_independent_of_tree_shape():
    for tree in enumerate_ranked_trees(4):
        nets = {expand(tree, d) for d in enumerate_decisions(4)}
        assert len(nets) == 15


@settings(max_examples=40, deadline=None)
@given(ranked_tree_codes(max_leaves=6), st.data())
def test_expansion_round_trip_property(tree, data):
    n = tree.leaves
    entries = [KEEP]
    for k in range(2, n):
        options = [KEEP] + [(i, s) for i in range(1, k) for s in ("L", "R")]
        entries.append(data.draw(st.sampled_from(options)))
    dec = DecisionVector(n, tuple(entries))
    net = expand(tree, dec)
    assert contains(tree, net)
    assert decisions_from_pair(tree, net) == dec
    assert phylo_to_pair(tree, pair_to_phylo(tree, net)) == net
