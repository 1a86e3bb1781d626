"""Counting, exhaustive enumeration, bottom growth and uniform sampling.

Counts are exact integers.  Enumeration walks the per-event choice space
in lexicographic order (events compared bottom-up, branchings before
reticulations, then by their number tuples).  Growing a network from n to
n+1 leaves rewrites the bottom of its DAG and re-derives the code, since
the accompanying leaf relabeling is not label-monotone.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    LEAF,
    RETIC,
    TREE,
    Branching,
    DagNode,
    EventCode,
    NetworkDag,
    Reticulation,
    ValidationError,
    code_to_dag,
    dag_to_code,
)


def rtc_count(leaves):
    """Number of ranked tree-child networks on `leaves` labeled leaves."""
    if leaves < 2:
        raise ValueError("leaf count must be at least 2")
    n = leaves
    return math.factorial(n) * math.factorial(n - 1) ** 2 // 2 ** (n - 1)


def rt_count(leaves):
    """Number of ranked trees on `leaves` labeled leaves."""
    if leaves < 2:
        raise ValueError("leaf count must be at least 2")
    n = leaves
    return math.factorial(n) * math.factorial(n - 1) // 2 ** (n - 1)


@lru_cache(maxsize=None)
def stirling1(n, k):
    """Unsigned Stirling number of the first kind: permutations of n
    elements with exactly k cycles."""
    if n < 0 or k < 0:
        raise ValueError("arguments must be non-negative")
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    return stirling1(n - 1, k - 1) + (n - 1) * stirling1(n - 1, k)


def rtc_count_by_branching(leaves, branchings):
    """Networks on `leaves` leaves with exactly `branchings` branching events."""
    if not 1 <= branchings <= leaves - 1:
        return 0
    return stirling1(leaves - 1, branchings) * rt_count(leaves)


def containing_count(leaves):
    """Networks on `leaves` leaves containing any fixed ranked tree:
    the double factorial 1 * 3 * ... * (2*leaves - 3)."""
    if leaves < 2:
        raise ValueError("leaf count must be at least 2")
    out = 1
    for odd in range(1, 2 * leaves - 2, 2):
        out *= odd
    return out


def event_choices(m, trees_only=False):
    """All events over m lineages in canonical order."""
    out = [Branching(a, b) for a, b in itertools.combinations(range(1, m + 1), 2)]
    if not trees_only:
        out.extend(Reticulation(a, b, h)
                   for a, b in itertools.combinations(range(1, m + 1), 2)
                   for h in range(1, m + 1) if h not in (a, b))
        out.sort(key=lambda e: e.sort_key())
    return out


def enumerate_codes(leaves, trees_only=False):
    """Yield every code on `leaves` leaves in lexicographic order."""
    if leaves < 2:
        raise ValueError("leaf count must be at least 2")
    domains = [event_choices(leaves - i + 1, trees_only)
               for i in range(1, leaves)]
    for events in itertools.product(*domains):
        yield EventCode(leaves, events)


def enumerate_ranked_trees(leaves):
    return enumerate_codes(leaves, trees_only=True)


# ---------------------------------------------------------------------------
# Bottom growth


@dataclass(frozen=True)
class GrowBranching:
    """Split the highest-numbered leaf into a cherry with labels a < b;
    the other leaves take the remaining labels in order."""

    a: int
    b: int


@dataclass(frozen=True)
class GrowReticulation:
    """Give two leaves a shared reticulation child.  In the grown network
    the new leaves under the two parents are labeled a < b, the hybrid
    leaf c; the parents are the current leaves whose labels equal the
    ranks of a and b once c is struck from 1..n+1."""

    a: int
    b: int
    c: int


GrowthOp = GrowBranching | GrowReticulation


def enumerate_growth_ops(leaves):
    """All growth operations from `leaves` to `leaves` + 1, branchings first."""
    n = leaves
    for a, b in itertools.combinations(range(1, n + 2), 2):
        yield GrowBranching(a, b)
    for a, b in itertools.combinations(range(1, n + 2), 2):
        for c in range(1, n + 2):
            if c not in (a, b):
                yield GrowReticulation(a, b, c)


def _rank_in(value, excluded, limit):
    """1-based rank of `value` within 1..limit minus `excluded`."""
    return value - sum(1 for e in excluded if e < value)


def _nth_in(idx, excluded, limit):
    """idx-th smallest element (1-based) of 1..limit minus `excluded`."""
    seen = 0
    for v in range(1, limit + 1):
        if v in excluded:
            continue
        seen += 1
        if seen == idx:
            return v
    raise ValueError("index out of range")


def apply_growth(code, op):
    """Grow `code` by one leaf by rewriting the bottom of its DAG."""
    n = code.leaves
    dag = code_to_dag(code)
    nodes = {nd.id: nd for nd in dag.nodes}
    edges = list(dag.edges)
    next_id = 1 + max(nodes)

    def relabel_leaf(nd, label):
        nodes[nd.id] = DagNode(nd.id, LEAF, label=label)

    if isinstance(op, GrowBranching):
        a, b = op.a, op.b
        if not 1 <= a < b <= n + 1:
            raise ValidationError(f"growth labels must satisfy 1 <= {a} < {b} <= {n + 1}")
        remaining = [x for x in range(1, n + 2) if x not in (a, b)]
        split = dag.leaf_id(n)
        nodes[split] = DagNode(split, TREE, rank=n)
        for j in range(1, n):
            relabel_leaf(nodes[dag.leaf_id(j)], remaining[j - 1])
        for label in (a, b):
            nodes[next_id] = DagNode(next_id, LEAF, label=label)
            edges.append((split, next_id))
            next_id += 1
    else:
        a, b, c = op.a, op.b, op.c
        if not (1 <= a < b <= n + 1) or not (1 <= c <= n + 1) or c in (a, b):
            raise ValidationError(f"bad reticulation growth labels ({a}, {b}, {c})")
        pa_label = _rank_in(a, (c,), n + 1)
        pb_label = _rank_in(b, (c,), n + 1)
        remaining = [x for x in range(1, n + 2) if x not in (a, b, c)]
        others = [x for x in range(1, n + 1) if x not in (pa_label, pb_label)]
        pa, pb = dag.leaf_id(pa_label), dag.leaf_id(pb_label)
        for j, label in zip(others, remaining):
            relabel_leaf(nodes[dag.leaf_id(j)], label)
        nodes[pa] = DagNode(pa, TREE, rank=n)
        nodes[pb] = DagNode(pb, TREE, rank=n)
        retic = next_id
        nodes[retic] = DagNode(retic, RETIC, rank=n)
        next_id += 1
        edges.extend([(pa, retic), (pb, retic)])
        for parent, label in ((pa, a), (pb, b), (retic, c)):
            nodes[next_id] = DagNode(next_id, LEAF, label=label)
            edges.append((parent, next_id))
            next_id += 1

    grown = NetworkDag(n + 1, tuple(nodes.values()), tuple(edges))
    return dag_to_code(grown)


def strip_bottom(code):
    """Undo one growth step: drop the bottom event of `code`.

    Returns (smaller code, op) with apply_growth(smaller, op) == code.
    """
    n1 = code.leaves
    if n1 < 3:
        raise ValidationError("nothing to strip below 3 leaves")
    n = n1 - 1
    dag = code_to_dag(code)
    nodes = {nd.id: nd for nd in dag.nodes}
    edges = list(dag.edges)
    bottom = code.events[0]

    def drop_leaf(label):
        lid = dag.leaf_id(label)
        del nodes[lid]
        edges.remove((dag.parents_of[lid][0], lid))

    if isinstance(bottom, Branching):
        a, b = bottom.c1, bottom.c2
        op = GrowBranching(a, b)
        parent = dag.parents_of[dag.leaf_id(a)][0]
        drop_leaf(a)
        drop_leaf(b)
        for x in range(1, n1 + 1):
            if x in (a, b):
                continue
            lid = dag.leaf_id(x)
            nodes[lid] = DagNode(lid, LEAF, label=_rank_in(x, (a, b), n1))
        nodes[parent] = DagNode(parent, LEAF, label=n)
    else:
        a, b, c = bottom.c1, bottom.c2, bottom.hybrid
        op = GrowReticulation(a, b, c)
        pa = dag.parents_of[dag.leaf_id(a)][0]
        pb = dag.parents_of[dag.leaf_id(b)][0]
        retic = dag.parents_of[dag.leaf_id(c)][0]
        drop_leaf(a)
        drop_leaf(b)
        drop_leaf(c)
        del nodes[retic]
        edges.remove((pa, retic))
        edges.remove((pb, retic))
        others = [x for x in range(1, n1 + 1) if x not in (a, b, c)]
        targets = [x for x in range(1, n + 1)
                   if x not in (_rank_in(a, (c,), n1), _rank_in(b, (c,), n1))]
        for x, label in zip(others, targets):
            lid = dag.leaf_id(x)
            nodes[lid] = DagNode(lid, LEAF, label=label)
        nodes[pa] = DagNode(pa, LEAF, label=_rank_in(a, (c,), n1))
        nodes[pb] = DagNode(pb, LEAF, label=_rank_in(b, (c,), n1))

    stripped = NetworkDag(n, tuple(nodes.values()), tuple(edges))
    return dag_to_code(stripped), op


# ---------------------------------------------------------------------------
# Uniform sampling


def _unrank_pair(m, idx):
    """idx-th pair (0-based) of 1 <= a < b <= m in lexicographic order."""
    rev = m * (m - 1) // 2 - 1 - idx
    k = (math.isqrt(8 * rev + 1) - 1) // 2
    a = m - 1 - k
    b = m - (rev - k * (k + 1) // 2)
    return a, b


def sample_uniform(leaves, seed=None, rng=None):
    """Draw a uniform code on `leaves` leaves; `seed` pins the stream.

    Event levels are independent, so one uniform choice per level over its
    pairs-with-optional-hybrid range yields the uniform law; the level with
    m lineages below it branches with probability 1/(m-1).  Pass `rng` to
    draw several codes from one stream.
    """
    if leaves < 2:
        raise ValueError("leaf count must be at least 2")
    if rng is None:
        rng = random.Random(seed)
    events = []
    for i in range(1, leaves):
        m = leaves - i + 1
        pairs = m * (m - 1) // 2
        idx = rng.randrange(pairs * (m - 1))
        if idx < pairs:
            a, b = _unrank_pair(m, idx)
            events.append(Branching(a, b))
        else:
            rest = idx - pairs
            a, b = _unrank_pair(m, rest // (m - 2))
            h = _nth_in(rest % (m - 2) + 1, (a, b), m)
            events.append(Reticulation(a, b, h))
    return EventCode(leaves, tuple(events))
