"""Bijection between event codes and boat crossing sequences.

A crossing schedule for n people (n-1 pair trips over, n-2 solo returns)
corresponds to a network on n leaves.  The correspondence goes through
the shore-relative `RankArray` form: growing a network by one leaf
prepends a send-rank entry and appends a return-rank entry, and the
bottom growth operation can be read off the appended return rank (the
maximal rank means the growth was a branching).
"""

from __future__ import annotations

import itertools

from .core import (
    BoatSequence,
    Branching,
    EventCode,
    RankArray,
    ValidationError,
    validate_boat,
    validate_ranks,
)
from .enumeration import (
    GrowBranching,
    GrowReticulation,
    _nth_in,
    _rank_in,
    apply_growth,
    strip_bottom,
)


def rank_map(boat):
    """Relative-rank form of a valid boat sequence."""
    bad = validate_boat(boat)
    if bad:
        raise ValidationError(bad)
    n = boat.people
    near = sorted(range(1, n + 1))
    far = []
    row1 = []
    row2 = []
    for i, (a, b) in enumerate(boat.sends, start=1):
        row1.append((near.index(a) + 1, near.index(b) + 1))
        near = [x for x in near if x not in (a, b)]
        far = sorted(far + [a, b])
        if i <= n - 2:
            back = boat.returns[i - 1]
            row2.append(far.index(back) + 1)
            far.remove(back)
            near = sorted(near + [back])
    return RankArray(n, tuple(row1), tuple(row2))


def rank_unmap(arr):
    """Rebuild the boat sequence realising a valid rank array."""
    bad = validate_ranks(arr)
    if bad:
        raise ValidationError(bad)
    n = arr.people
    near = sorted(range(1, n + 1))
    far = []
    sends = []
    returns = []
    for i, (ra, rb) in enumerate(arr.row1, start=1):
        a, b = near[ra - 1], near[rb - 1]
        sends.append((a, b) if a < b else (b, a))
        near = [x for x in near if x not in (a, b)]
        far = sorted(far + [a, b])
        if i <= n - 2:
            back = far[arr.row2[i - 1] - 1]
            returns.append(back)
            far.remove(back)
            near = sorted(near + [back])
    return BoatSequence(n, tuple(sends), tuple(returns))


def extend_ranks(arr, op):
    """Rank array of the one-leaf-larger network grown by `op`."""
    n = arr.people
    if isinstance(op, GrowBranching):
        if not 1 <= op.a < op.b <= n + 1:
            raise ValidationError(f"growth labels out of range for {n} people")
        first = (op.a, op.b)
        tail = n
    elif isinstance(op, GrowReticulation):
        if not (1 <= op.a < op.b <= n + 1) or op.c in (op.a, op.b) \
                or not 1 <= op.c <= n + 1:
            raise ValidationError(f"growth labels out of range for {n} people")
        first = (op.a, op.b)
        tail = _rank_in(op.c, (op.a, op.b), n + 1)
    else:
        raise TypeError(f"not a growth operation: {op!r}")
    return RankArray(n + 1, (first,) + arr.row1, arr.row2 + (tail,))


def reduce_ranks(arr):
    """Undo extend_ranks: return (smaller array, growth op)."""
    n1 = arr.people
    if n1 < 3:
        raise ValidationError("nothing to reduce below 3 people")
    n = n1 - 1
    a, b = arr.row1[0]
    tail = arr.row2[-1]
    smaller = RankArray(n, arr.row1[1:], arr.row2[:-1])
    if tail == n:
        return smaller, GrowBranching(a, b)
    return smaller, GrowReticulation(a, b, _nth_in(tail, (a, b), n1))


_BASE = EventCode(2, (Branching(1, 2),))


def rtcn_to_boat(code):
    """Boat sequence of `code`: strip the network to the two-leaf base,
    then replay the growth steps on the rank array."""
    ops = []
    work = code
    while work.leaves > 2:
        work, op = strip_bottom(work)
        ops.append(op)
    arr = RankArray(2, ((1, 2),), ())
    for op in reversed(ops):
        arr = extend_ranks(arr, op)
    return rank_unmap(arr)


def boat_to_rtcn(boat):
    """Network whose boat sequence is `boat`."""
    arr = rank_map(boat)
    ops = []
    while arr.people > 2:
        arr, op = reduce_ranks(arr)
        ops.append(op)
    code = _BASE
    for op in reversed(ops):
        code = apply_growth(code, op)
    return code


def max_rank_return_count(boat):
    """Number of return trips rowed by the far shore's highest-ranked
    person at that moment.  Equals the branching count minus one."""
    bad = validate_boat(boat)
    if bad:
        raise ValidationError(bad)
    arr = rank_map(boat)
    return sum(1 for i, t in enumerate(arr.row2, start=1) if t == i + 1)


def enumerate_boats(people):
    """All valid boat sequences, enumerated through their rank arrays."""
    if people < 2:
        raise ValueError("at least 2 people are needed")
    n = people
    row1_domains = [list(itertools.combinations(range(1, n - i + 2), 2))
                    for i in range(1, n)]
    row2_domains = [range(1, i + 2) for i in range(1, n - 1)]
    for row1 in itertools.product(*row1_domains):
        for row2 in itertools.product(*row2_domains):
            yield rank_unmap(RankArray(n, row1, row2))
