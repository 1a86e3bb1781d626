"""Core value types for ranked tree-child networks.

A ranked tree-child network (RTCN) on leaves 1..n is described by the
sequence of its n-1 events read bottom-up.  Just below the i-th event
from the bottom there are n-i+1 lineages, numbered 1..n-i+1 from left
to right; an event either merges two of them (a branching) or hybridises
one of them below a pair of parents (a reticulation).  The event sequence
(`EventCode`) is the canonical machine representation; `NetworkDag` is the
equivalent explicit node/edge form, and `code_to_dag` / `dag_to_code`
translate between the two.

Lineage numbering convention, used everywhere: after a branching of
lineages c1 < c2 the parent lineage takes position c1 and positions
above c2 shift down by one.  After a reticulation with non-hybrid
children c1 < c2 and hybrid child h, the hybrid lineage ends and the two
parent lineages sit at the positions of c1 and c2 with positions above h
shifted down by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


class ParseError(ValueError):
    """Raised for text that does not match a grammar; carries a column."""

    def __init__(self, message, position=None):
        self.message = message
        self.position = position
        if position is not None:
            message = f"column {position + 1}: {message}"
        super().__init__(message)


class ValidationError(ValueError):
    """Raised for structurally well-formed objects that violate invariants."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


# ---------------------------------------------------------------------------
# Event codes


@dataclass(frozen=True)
class Branching:
    """Two lineages c1 < c2 merge into one parent lineage."""

    c1: int
    c2: int

    def sort_key(self):
        return (0, self.c1, self.c2, 0)


@dataclass(frozen=True)
class Reticulation:
    """Lineage `hybrid` is the common child of parents over c1 and c2."""

    c1: int
    c2: int
    hybrid: int

    def sort_key(self):
        return (1, self.c1, self.c2, self.hybrid)


Event = Branching | Reticulation


@dataclass(frozen=True)
class EventCode:
    """Bottom-up event sequence of an RTCN; `events[0]` is the lowest event."""

    leaves: int
    events: tuple[Event, ...]

    def profile(self):
        """0/1 vector marking which events are reticulations, bottom-up."""
        return tuple(1 if isinstance(e, Reticulation) else 0 for e in self.events)

    @property
    def branching_count(self):
        return sum(1 for e in self.events if isinstance(e, Branching))

    @property
    def reticulation_count(self):
        return sum(1 for e in self.events if isinstance(e, Reticulation))

    @property
    def reticulation_positions(self):
        """1-based bottom-up indices of the reticulation events, increasing."""
        return tuple(i + 1 for i, e in enumerate(self.events)
                     if isinstance(e, Reticulation))

    @property
    def is_ranked_tree(self):
        return self.reticulation_count == 0

    def sort_key(self):
        return tuple(e.sort_key() for e in self.events)


def validate_code(code):
    """Return a list of human-readable violations; empty means valid."""
    bad = []
    n = code.leaves
    if n < 2:
        bad.append("leaf count must be at least 2")
        return bad
    if len(code.events) != n - 1:
        bad.append(f"expected {n - 1} events, got {len(code.events)}")
        return bad
    for i, ev in enumerate(code.events, start=1):
        m = n - i + 1  # lineages just below event i
        if isinstance(ev, Branching):
            if not (1 <= ev.c1 < ev.c2 <= m):
                bad.append(f"event {i}: children must satisfy 1 <= c1 < c2 <= {m}")
        elif isinstance(ev, Reticulation):
            if m < 3:
                bad.append(f"event {i}: a reticulation needs at least 3 lineages")
            elif not (1 <= ev.c1 < ev.c2 <= m):
                bad.append(f"event {i}: children must satisfy 1 <= c1 < c2 <= {m}")
            elif not (1 <= ev.hybrid <= m) or ev.hybrid in (ev.c1, ev.c2):
                bad.append(f"event {i}: hybrid child must lie in 1..{m} "
                           f"outside {{{ev.c1}, {ev.c2}}}")
        else:
            bad.append(f"event {i}: unknown event type {type(ev).__name__}")
    last = code.events[-1]
    if not (isinstance(last, Branching) and last.c1 == 1 and last.c2 == 2):
        bad.append(f"event {n - 1}: the topmost event must be B 1 2")
    return bad


def profile(code):
    """Reticulation indicator vector of `code`, bottom-up."""
    return code.profile()


# ---------------------------------------------------------------------------
# Explicit DAG form


ROOT = "root"
TREE = "tree"
RETIC = "retic"
LEAF = "leaf"


@dataclass(frozen=True)
class DagNode:
    id: int
    kind: str
    rank: int | None = None   # event rank, 1 = topmost event; None for root/leaf
    label: int | None = None  # leaf label; None otherwise


@dataclass(frozen=True)
class NetworkDag:
    """Node/edge form of an RTCN.  Edges are (parent, child) id pairs."""

    leaves: int
    nodes: tuple[DagNode, ...]
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def node_by_id(self):
        return {nd.id: nd for nd in self.nodes}

    @cached_property
    def children_of(self):
        out = {nd.id: [] for nd in self.nodes}
        for u, v in self.edges:
            out[u].append(v)
        return out

    @cached_property
    def parents_of(self):
        out = {nd.id: [] for nd in self.nodes}
        for u, v in self.edges:
            out[v].append(u)
        return out

    @property
    def root_id(self):
        for nd in self.nodes:
            if nd.kind == ROOT:
                return nd.id
        raise ValidationError("network has no root node")

    def leaf_id(self, label):
        for nd in self.nodes:
            if nd.kind == LEAF and nd.label == label:
                return nd.id
        raise ValidationError(f"network has no leaf labeled {label}")

    def nodes_at_rank(self, rank):
        return [nd for nd in self.nodes if nd.rank == rank]

    def _effective_rank(self, nd):
        if nd.kind == ROOT:
            return 0
        if nd.kind == LEAF:
            return self.leaves
        return nd.rank

    def validate(self):
        """Return a list of violations; empty means a valid RTCN."""
        bad = []
        n = self.leaves
        if n < 2:
            return ["leaf count must be at least 2"]
        ids = [nd.id for nd in self.nodes]
        if len(set(ids)) != len(ids):
            return ["duplicate node ids"]
        if len(set(self.edges)) != len(self.edges):
            bad.append("parallel edges are not allowed")
        for u, v in self.edges:
            if u not in self.node_by_id or v not in self.node_by_id:
                return [f"edge ({u}, {v}) references an unknown node"]

        indeg = {nd.id: len(self.parents_of[nd.id]) for nd in self.nodes}
        outdeg = {nd.id: len(self.children_of[nd.id]) for nd in self.nodes}
        roots = [nd for nd in self.nodes if nd.kind == ROOT]
        if len(roots) != 1:
            bad.append(f"expected exactly one root node, found {len(roots)}")
        degree_table = {ROOT: (0, 1), TREE: (1, 2), RETIC: (2, 1), LEAF: (1, 0)}
        for nd in self.nodes:
            if nd.kind not in degree_table:
                bad.append(f"node {nd.id}: unknown kind {nd.kind!r}")
                continue
            want = degree_table[nd.kind]
            got = (indeg[nd.id], outdeg[nd.id])
            if got != want:
                bad.append(f"node {nd.id} ({nd.kind}): degree {got}, expected {want}")
            if nd.kind in (ROOT, LEAF) and nd.rank is not None:
                bad.append(f"node {nd.id}: {nd.kind} nodes carry no rank")
            if nd.kind in (ROOT, TREE, RETIC) and nd.label is not None:
                bad.append(f"node {nd.id}: only leaves carry labels")

        labels = sorted(nd.label for nd in self.nodes if nd.kind == LEAF)
        if labels != list(range(1, n + 1)):
            bad.append(f"leaf labels must be exactly 1..{n}, got {labels}")

        # Every internal node needs a non-reticulation child (tree-child).
        for nd in self.nodes:
            if nd.kind == LEAF:
                continue
            kids = self.children_of[nd.id]
            if kids and all(self.node_by_id[c].kind == RETIC for c in kids):
                bad.append(f"node {nd.id} is not tree-child: every child "
                           "is a reticulation node")

        # One event per rank: a lone tree node, or two tree nodes over a
        # reticulation node they both feed.
        by_rank = {}
        for nd in self.nodes:
            if nd.kind in (TREE, RETIC):
                if nd.rank is None or not (1 <= nd.rank <= n - 1):
                    bad.append(f"node {nd.id}: rank must lie in 1..{n - 1}")
                    continue
                by_rank.setdefault(nd.rank, []).append(nd)
        for k in range(1, n):
            group = by_rank.get(k, [])
            kinds = sorted(nd.kind for nd in group)
            if kinds == [TREE]:
                continue
            if kinds == [RETIC, TREE, TREE]:
                retic = next(nd for nd in group if nd.kind == RETIC)
                parents = [nd for nd in group if nd.kind == TREE]
                if sorted(self.parents_of[retic.id]) != sorted(p.id for p in parents):
                    bad.append(f"rank {k}: the reticulation node's parents must "
                               "be the two tree nodes of the same rank")
                continue
            bad.append(f"rank {k}: expected one tree node or a tree-tree-retic "
                       f"triple, found kinds {kinds}")

        if bad:
            return bad

        # Edges respect time: same-rank edges only inside a reticulation
        # event, all others go strictly downward in rank.
        for u, v in self.edges:
            nu, nv = self.node_by_id[u], self.node_by_id[v]
            ru, rv = self._effective_rank(nu), self._effective_rank(nv)
            if ru == rv:
                if not (nu.kind == TREE and nv.kind == RETIC):
                    bad.append(f"edge ({u}, {v}) joins two nodes of rank {ru}")
            elif ru > rv:
                bad.append(f"edge ({u}, {v}) points upward in rank ({ru} > {rv})")

        # Exactly k+1 lineages cross the gap below the rank-k event.
        for k in range(1, n):
            crossing = 0
            for u, v in self.edges:
                nu, nv = self.node_by_id[u], self.node_by_id[v]
                if self._effective_rank(nu) <= k < self._effective_rank(nv):
                    crossing += 1
            if crossing != k + 1:
                bad.append(f"{crossing} lineages cross the gap below the "
                           f"rank-{k} event, expected {k + 1}")

        # Reachability from the root.
        seen = set()
        stack = [roots[0].id]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            stack.extend(self.children_of[u])
        if len(seen) != len(self.nodes):
            bad.append("not every node is reachable from the root")
        return bad

    @cached_property
    def _descendant_leaves(self):
        memo = {}

        def walk(u):
            if u in memo:
                return memo[u]
            nd = self.node_by_id[u]
            if nd.kind == LEAF:
                result = frozenset([nd.label])
            else:
                result = frozenset()
                for c in self.children_of[u]:
                    result |= walk(c)
            memo[u] = result
            return result

        for nd in self.nodes:
            walk(nd.id)
        return memo

    def canonical_form(self):
        """Isomorphism-invariant description of the labeled ranked DAG.

        Within a valid RTCN each node is pinned down by its kind, its rank
        and its set of descendant leaves, so the sorted list of edges over
        those names identifies the network.
        """
        desc = self._descendant_leaves

        def name(u):
            nd = self.node_by_id[u]
            return (nd.kind, self._effective_rank(nd), tuple(sorted(desc[u])))

        return (self.leaves, tuple(sorted((name(u), name(v)) for u, v in self.edges)))


# ---------------------------------------------------------------------------
# Code <-> DAG conversion


def code_to_dag(code):
    """Build the explicit DAG for `code`; raises ValidationError on bad codes.

    Nodes are materialised top-down.  The rank-k event acts on the k open
    lineages above it; which open slots it touches is recovered by inverting
    the lineage-numbering convention.
    """
    bad = validate_code(code)
    if bad:
        raise ValidationError(bad)
    n = code.leaves
    nodes = [DagNode(0, ROOT)]
    edges = []
    next_id = 1
    open_slots = [0]  # source node of each dangling edge, left to right

    for k in range(1, n):
        ev = code.events[n - 1 - k]  # bottom-up index n - k
        if isinstance(ev, Branching):
            t = next_id
            next_id += 1
            nodes.append(DagNode(t, TREE, rank=k))
            edges.append((open_slots[ev.c1 - 1], t))
            below = [None] * (k + 1)
            below[ev.c1 - 1] = t
            below[ev.c2 - 1] = t
            for y in range(1, k + 1):
                if y == ev.c1:
                    continue
                x = y + 1 if y >= ev.c2 else y
                below[x - 1] = open_slots[y - 1]
        else:
            h = ev.hybrid
            l1 = ev.c1 - (1 if h < ev.c1 else 0)
            l2 = ev.c2 - (1 if h < ev.c2 else 0)
            p1, p2, r = next_id, next_id + 1, next_id + 2
            next_id += 3
            nodes.append(DagNode(p1, TREE, rank=k))
            nodes.append(DagNode(p2, TREE, rank=k))
            nodes.append(DagNode(r, RETIC, rank=k))
            edges.append((open_slots[l1 - 1], p1))
            edges.append((open_slots[l2 - 1], p2))
            edges.append((p1, r))
            edges.append((p2, r))
            below = [None] * (k + 1)
            below[ev.c1 - 1] = p1
            below[ev.c2 - 1] = p2
            below[h - 1] = r
            for y in range(1, k + 1):
                if y in (l1, l2):
                    continue
                x = y + 1 if y >= h else y
                below[x - 1] = open_slots[y - 1]
        open_slots = below

    for j in range(1, n + 1):
        leaf = next_id
        next_id += 1
        nodes.append(DagNode(leaf, LEAF, label=j))
        edges.append((open_slots[j - 1], leaf))
    return NetworkDag(n, tuple(nodes), tuple(edges))


def _sweep_up(dag):
    """Replay the lineage numbering of `dag` from the leaves upward.

    Returns (events, gaps) where events is the bottom-up event list and
    gaps[i] maps each edge crossing the gap above the i-th event (gaps[0]:
    above the leaves) to its lineage number.  Raises ValidationError when
    the event structure cannot be replayed.
    """
    n = dag.leaves
    children = dag.children_of
    parents = dag.parents_of
    by_id = dag.node_by_id

    open_edges = {}
    for nd in dag.nodes:
        if nd.kind == LEAF:
            (p,) = parents[nd.id]
            open_edges[(p, nd.id)] = nd.label
    gaps = [dict(open_edges)]
    events = []

    for i in range(1, n):
        k = n - i
        group = dag.nodes_at_rank(k)
        kinds = sorted(nd.kind for nd in group)
        if kinds == [TREE]:
            (t,) = group
            kids = children[t.id]
            if len(kids) != 2:
                raise ValidationError(f"rank {k}: branching node has {len(kids)} children")
            e1, e2 = (t.id, kids[0]), (t.id, kids[1])
            if e1 not in open_edges or e2 not in open_edges:
                raise ValidationError(f"rank {k}: event children are not open lineages")
            c1, c2 = sorted((open_edges.pop(e1), open_edges.pop(e2)))
            events.append(Branching(c1, c2))
            relabeled = {e: (x - 1 if x > c2 else x) for e, x in open_edges.items()}
            (u,) = parents[t.id]
            relabeled[(u, t.id)] = c1
        elif kinds == [RETIC, TREE, TREE]:
            retic = next(nd for nd in group if nd.kind == RETIC)
            side = {}
            for p in group:
                if p.kind != TREE:
                    continue
                others = [c for c in children[p.id] if c != retic.id]
                if len(others) != 1:
                    raise ValidationError(f"rank {k}: reticulation parent "
                                          f"{p.id} lacks a plain child")
                side[p.id] = (p.id, others[0])
            (rc,) = children[retic.id]
            eh = (retic.id, rc)
            needed = list(side.values()) + [eh]
            if any(e not in open_edges for e in needed):
                raise ValidationError(f"rank {k}: event children are not open lineages")
            h = open_edges.pop(eh)
            (pa, ea), (pb, eb) = side.items()
            la, lb = open_edges.pop(ea), open_edges.pop(eb)
            if la > lb:
                (pa, la), (pb, lb) = (pb, lb), (pa, la)
            events.append(Reticulation(la, lb, h))
            relabeled = {e: (x - 1 if x > h else x) for e, x in open_edges.items()}
            (ua,) = parents[pa]
            (ub,) = parents[pb]
            relabeled[(ua, pa)] = la - (1 if h < la else 0)
            relabeled[(ub, pb)] = lb - (1 if h < lb else 0)
        else:
            raise ValidationError(f"rank {k}: expected one tree node or a "
                                  f"tree-tree-retic triple, found {kinds}")
        open_edges = relabeled
        gaps.append(dict(open_edges))

    if set(open_edges.values()) != {1} or len(open_edges) != 1:
        raise ValidationError("the sweep did not end on the single root lineage")
    return events, gaps


def dag_to_code(dag):
    """Recover the canonical event sequence of a valid `NetworkDag`."""
    bad = dag.validate()
    if bad:
        raise ValidationError(bad)
    events, _ = _sweep_up(dag)
    code = EventCode(dag.leaves, tuple(events))
    bad = validate_code(code)
    if bad:
        raise ValidationError(bad)
    return code


# ---------------------------------------------------------------------------
# River-crossing sequences and their rank arrays


@dataclass(frozen=True)
class BoatSequence:
    """Crossing schedule for `people` 1..n: n-1 pair sends, n-2 solo returns.

    sends[i] is the unordered pair rowing over on trip i+1 (stored sorted);
    after every send but the last, returns[i] rows back alone.
    """

    people: int
    sends: tuple[tuple[int, int], ...]
    returns: tuple[int, ...]


def validate_boat(boat):
    bad = []
    n = boat.people
    if n < 2:
        bad.append("at least 2 people are needed")
        return bad
    if len(boat.sends) != n - 1:
        bad.append(f"expected {n - 1} sends, got {len(boat.sends)}")
        return bad
    if len(boat.returns) != n - 2:
        bad.append(f"expected {n - 2} returns, got {len(boat.returns)}")
        return bad
    near = set(range(1, n + 1))
    far = set()
    for i, pair in enumerate(boat.sends, start=1):
        a, b = pair
        if not (1 <= a < b <= n):
            bad.append(f"send {i}: {a},{b} is not a sorted pair from 1..{n}")
            return bad
        if a not in near or b not in near:
            bad.append(f"send {i}: {a},{b} are not both on the near shore")
            return bad
        near -= {a, b}
        far |= {a, b}
        if i <= n - 2:
            back = boat.returns[i - 1]
            if back not in far:
                bad.append(f"return {i}: {back} is not on the far shore")
                return bad
            far.remove(back)
            near.add(back)
    return bad


@dataclass(frozen=True)
class RankArray:
    """Shore-relative form of a boat sequence.

    row1[i] holds the ranks of the i+1-th send pair within the near-shore
    group it leaves; row2[i] the rank of the i+1-th returner within the
    far-shore group it leaves.  Ranks count from 1 upward.
    """

    people: int
    row1: tuple[tuple[int, int], ...]
    row2: tuple[int, ...]


def validate_ranks(arr):
    bad = []
    n = arr.people
    if n < 2:
        bad.append("at least 2 people are needed")
        return bad
    if len(arr.row1) != n - 1:
        bad.append(f"expected {n - 1} send entries, got {len(arr.row1)}")
    if len(arr.row2) != n - 2:
        bad.append(f"expected {n - 2} return entries, got {len(arr.row2)}")
    if bad:
        return bad
    for i, (a, b) in enumerate(arr.row1, start=1):
        m = n - i + 1
        if not (1 <= a < b <= m):
            bad.append(f"send entry {i}: ranks must satisfy 1 <= a < b <= {m}")
    for i, t in enumerate(arr.row2, start=1):
        if not (1 <= t <= i + 1):
            bad.append(f"return entry {i}: rank must lie in 1..{i + 1}")
    return bad


# ---------------------------------------------------------------------------
# Permutations and increasing transposition sequences


@dataclass(frozen=True)
class Permutation:
    """Permutation of 1..n stored in one-line form: image[i-1] = sigma(i)."""

    n: int
    image: tuple[int, ...]

    def __call__(self, x):
        return self.image[x - 1]

    def cycles(self):
        """Disjoint cycles, each starting at its minimum, sorted by minimum."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.image[start - 1]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.image[x - 1]
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_string(self):
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())


def validate_perm(perm):
    bad = []
    if perm.n < 1:
        bad.append("n must be at least 1")
        return bad
    if sorted(perm.image) != list(range(1, perm.n + 1)):
        bad.append(f"image must be a rearrangement of 1..{perm.n}")
    return bad


@dataclass(frozen=True)
class TranspositionSeq:
    """Transpositions (x_i, y_i) with x_1 < x_2 < ... and x_i < y_i <= n.

    Applied left to right: the first pair acts first.  The empty sequence
    is allowed and stands for the identity.
    """

    n: int
    pairs: tuple[tuple[int, int], ...]


def validate_transpositions(seq):
    bad = []
    if seq.n < 1:
        bad.append("n must be at least 1")
        return bad
    prev_x = 0
    for x, y in seq.pairs:
        if not (0 < x < y <= seq.n):
            bad.append(f"pair ({x}, {y}) must satisfy 0 < x < y <= {seq.n}")
        if x <= prev_x:
            bad.append(f"first coordinates must increase: {x} after {prev_x}")
        prev_x = x
    return bad


# ---------------------------------------------------------------------------
# Plain phylogenetic trees (no ranks) and their labeled history form


@dataclass(frozen=True)
class PhyloTree:
    """Rooted binary tree with leaves 1..leaves and unordered children.

    `shape` is a nested structure: a leaf is its integer label, an internal
    node a pair (left, right) ordered so the smaller minimum leaf comes
    first.  Equal trees therefore compare equal structurally.
    """

    leaves: int
    shape: object

    @staticmethod
    def build(leaves, shape):
        """Construct with children recursively put in canonical order."""

        def canon(node):
            if isinstance(node, int):
                return node, node
            a, b = node
            ca, ma = canon(a)
            cb, mb = canon(b)
            if mb < ma:
                (ca, ma), (cb, mb) = (cb, mb), (ca, ma)
            return (ca, cb), ma

        shape, _ = canon(shape)
        return PhyloTree(leaves, shape)


def validate_phylo(tree):
    bad = []
    if tree.leaves < 2:
        bad.append("at least 2 leaves are needed")
        return bad
    labels = []

    def walk(node):
        if isinstance(node, int):
            labels.append(node)
            return node
        if not (isinstance(node, tuple) and len(node) == 2):
            bad.append(f"internal nodes must have exactly two children: {node!r}")
            return None
        ma = walk(node[0])
        mb = walk(node[1])
        if ma is None or mb is None:
            return None
        if not ma < mb:
            bad.append(f"children are not in canonical order at {node!r}")
        return min(ma, mb)

    walk(tree.shape)
    if not bad and sorted(labels) != list(range(1, tree.leaves + 1)):
        bad.append(f"leaf labels must be exactly 1..{tree.leaves}")
    return bad


@dataclass(frozen=True)
class HistoryNode:
    """Internal node of a labeled history tree; `index` k names it k-bar."""

    index: int
    children: tuple[object, object]  # each child: int leaf label or HistoryNode

    def sort_key(self):
        return (1, self.index)


def _history_child_key(child):
    return (0, child) if isinstance(child, int) else child.sort_key()


@dataclass(frozen=True)
class LabeledHistoryTree:
    """A phylo tree plus a stem edge and internal labels 1-bar..(n-1)-bar.

    The defining property: peeling leaves n, n-1, ..., 2 in turn, the parent
    of leaf m at peeling time is the node labeled (m-1)-bar.  `top` is the
    single child hanging from the stem.
    """

    leaves: int
    top: object  # int leaf label or HistoryNode

    def strip(self):
        """Drop stem and labels, producing the underlying PhyloTree."""

        def walk(node):
            if isinstance(node, int):
                return node
            return tuple(walk(c) for c in node.children)

        return PhyloTree.build(self.leaves, walk(self.top))


def history_node(index, child_a, child_b):
    """Build a HistoryNode with children in canonical order."""
    kids = sorted((child_a, child_b), key=_history_child_key)
    return HistoryNode(index, (kids[0], kids[1]))


def validate_history(tree):
    """Check the peeling property by actually peeling the tree."""
    n = tree.leaves
    if n < 2:
        return ["at least 2 leaves are needed"]

    def key(node):
        return ("leaf", node) if isinstance(node, int) else ("bar", node.index)

    parent = {}
    kids = {}
    seen_leaves = []
    seen_indices = []

    def walk(node, par):
        parent[key(node)] = par
        if isinstance(node, int):
            seen_leaves.append(node)
            return
        seen_indices.append(node.index)
        kids[key(node)] = list(node.children)
        for c in node.children:
            walk(c, node)

    walk(tree.top, None)
    if sorted(seen_leaves) != list(range(1, n + 1)):
        return [f"leaf labels must be exactly 1..{n}"]
    if sorted(seen_indices) != list(range(1, n)):
        return [f"internal labels must be exactly 1..{n - 1}"]

    # Peel leaves n..2; at each step leaf m must hang from (m-1)-bar,
    # whose other child is then spliced into the grandparent.
    for m in range(n, 1, -1):
        par = parent[("leaf", m)]
        if not isinstance(par, HistoryNode) or par.index != m - 1:
            got = "the stem" if par is None else f"label {par.index}"
            return [f"after peeling, leaf {m} hangs from {got}, "
                    f"expected label {m - 1}"]
        pk = key(par)
        sibling = next(c for c in kids[pk] if key(c) != ("leaf", m))
        grand = parent[pk]
        parent[key(sibling)] = grand
        if grand is not None:
            gk = kids[key(grand)]
            gk[gk.index(par)] = sibling
    return []


# ---------------------------------------------------------------------------
# Containment decision vectors


KEEP = "K"


@dataclass(frozen=True)
class DecisionVector:
    """Per-event expansion choices for a ranked tree, top-down.

    entries[k-1] describes the k-th event from the top: KEEP leaves the
    branching alone; a pair (i, side) hybridises one of its two child
    lineages (side "L": the left/smaller one, "R": the right/larger one)
    below a second parent placed on the i-th other lineage, counted left
    to right among the k-1 lineages not in the event.
    """

    leaves: int
    entries: tuple[object, ...]


def validate_decisions(dec):
    bad = []
    n = dec.leaves
    if n < 2:
        bad.append("at least 2 leaves are needed")
        return bad
    if len(dec.entries) != n - 1:
        bad.append(f"expected {n - 1} entries, got {len(dec.entries)}")
        return bad
    for k, entry in enumerate(dec.entries, start=1):
        if entry == KEEP:
            continue
        if not (isinstance(entry, tuple) and len(entry) == 2):
            bad.append(f"entry {k}: expected K or a pair (i, side)")
            continue
        i, side = entry
        if side not in ("L", "R"):
            bad.append(f"entry {k}: side must be L or R")
        if not (isinstance(i, int) and 1 <= i <= k - 1):
            bad.append(f"entry {k}: lineage index must lie in 1..{k - 1}")
    return bad
