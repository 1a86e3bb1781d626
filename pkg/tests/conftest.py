"""Shared strategies: independently constructed valid event codes.

The strategy rebuilds codes from per-level choice indices with its own
pair-unranking loop, so it does not lean on the package's samplers.
"""

import hypothesis.strategies as st

from rtcnkit import Branching, EventCode, Reticulation


def _pair_from_index(m, idx):
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            if idx == 0:
                return a, b
            idx -= 1
    raise AssertionError("index out of range")


def _code_from_choices(leaves, choices):
    events = []
    for i, pick in enumerate(choices, start=1):
        m = leaves - i + 1
        pairs = m * (m - 1) // 2
        if pick < pairs:
            a, b = _pair_from_index(m, pick)
            events.append(Branching(a, b))
        else:
            rest = pick - pairs
            a, b = _pair_from_index(m, rest // (m - 2))
            others = [x for x in range(1, m + 1) if x not in (a, b)]
            events.append(Reticulation(a, b, others[rest % (m - 2)]))
    return EventCode(leaves, tuple(events))


@st.composite
def event_codes(draw, min_leaves=2, max_leaves=7):
    leaves = draw(st.integers(min_leaves, max_leaves))
    choices = []
    for i in range(1, leaves):
        m = leaves - i + 1
        top = m * (m - 1) // 2 * (m - 1)
        choices.append(draw(st.integers(0, top - 1)))
    return _code_from_choices(leaves, choices)


@st.composite
def ranked_tree_codes(draw, min_leaves=2, max_leaves=7):
    leaves = draw(st.integers(min_leaves, max_leaves))
    choices = []
    for i in range(1, leaves):
        m = leaves - i + 1
        choices.append(draw(st.integers(0, m * (m - 1) // 2 - 1)))
    return _code_from_choices(leaves, choices)
