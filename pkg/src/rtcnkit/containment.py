"""Ranked trees inside networks: reduction, expansion, and the matching
bijection with plain phylogenetic trees.

A ranked tree T sits inside a network N when removing one incoming edge
per reticulation node and splicing out the degree-two leftovers yields T,
ranks included, with the k-th event of N landing on the k-th event of T.
Networks containing a fixed T correspond to per-event decision vectors
(`DecisionVector`) and, through a labeled history tree, to plain rooted
binary trees on the same leaf set; there are 1*3*...*(2n-3) of each.
"""

from __future__ import annotations

import itertools

from .core import (
    KEEP,
    DecisionVector,
    DagNode,
    LEAF,
    LabeledHistoryTree,
    NetworkDag,
    RETIC,
    ROOT,
    TREE,
    ValidationError,
    _sweep_up,
    code_to_dag,
    dag_to_code,
    history_node,
    validate_code,
    validate_decisions,
    validate_history,
    validate_phylo,
)


def _require_tree(tree):
    bad = validate_code(tree)
    if bad:
        raise ValidationError(bad)
    if not tree.is_ranked_tree:
        raise ValidationError("expected a ranked tree (branching events only)")


def enumerate_decisions(leaves):
    """All decision vectors on `leaves` leaves, in canonical order
    (keep first, then lineage index, then side L before R)."""
    if leaves < 2:
        raise ValueError("leaf count must be at least 2")
    domains = []
    for k in range(1, leaves):
        options = [KEEP]
        for i in range(1, k):
            options.extend([(i, "L"), (i, "R")])
        domains.append(options)
    for entries in itertools.product(*domains):
        yield DecisionVector(leaves, entries)


def expand(tree, decisions):
    """Network obtained from `tree` by hybridising per `decisions`.

    Events are laid down top-down.  A kept event stays a branching; a
    rewritten one gains a second parent sitting on the chosen other
    lineage, with the chosen child lineage of the tree continuing below
    the reticulation node.
    """
    _require_tree(tree)
    bad = validate_decisions(decisions)
    if bad:
        raise ValidationError(bad)
    if decisions.leaves != tree.leaves:
        raise ValidationError("decision vector and tree sizes differ")
    n = tree.leaves
    nodes = [DagNode(0, ROOT)]
    edges = []
    next_id = 1
    open_slots = [0]

    for k in range(1, n):
        ev = tree.events[n - 1 - k]
        c1, c2 = ev.c1, ev.c2
        entry = decisions.entries[k - 1]
        below = [None] * (k + 1)
        if entry == KEEP:
            t = next_id
            next_id += 1
            nodes.append(DagNode(t, TREE, rank=k))
            edges.append((open_slots[c1 - 1], t))
            below[c1 - 1] = below[c2 - 1] = t
            passthrough = [y for y in range(1, k + 1) if y != c1]
        else:
            i, side = entry
            others = [y for y in range(1, k + 1) if y != c1]
            y_new = others[i - 1]
            p1, p2, r = next_id, next_id + 1, next_id + 2
            next_id += 3
            nodes.append(DagNode(p1, TREE, rank=k))
            nodes.append(DagNode(p2, TREE, rank=k))
            nodes.append(DagNode(r, RETIC, rank=k))
            edges.extend([(open_slots[c1 - 1], p1), (open_slots[y_new - 1], p2),
                          (p1, r), (p2, r)])
            if side == "L":
                below[c1 - 1], below[c2 - 1] = r, p1
            else:
                below[c1 - 1], below[c2 - 1] = p1, r
            o = y_new + 1 if y_new >= c2 else y_new
            below[o - 1] = p2
            passthrough = [y for y in range(1, k + 1) if y not in (c1, y_new)]
        for y in passthrough:
            x = y + 1 if y >= c2 else y
            below[x - 1] = open_slots[y - 1]
        open_slots = below

    for j in range(1, n + 1):
        nodes.append(DagNode(next_id, LEAF, label=j))
        edges.append((open_slots[j - 1], next_id))
        next_id += 1
    return dag_to_code(NetworkDag(n, tuple(nodes), tuple(edges)))


def reduce_by_choice(net, choice):
    """Ranked tree left after removing one parent edge per reticulation.

    `choice` lists one flag per reticulation event in top-down order:
    0 removes the edge of the parent over the smaller non-hybrid child,
    1 the other one.  Spliced-out nodes keep no trace; surviving events
    keep their ranks.
    """
    bad = validate_code(net)
    if bad:
        raise ValidationError(bad)
    n = net.leaves
    retic_ranks = sorted(n - i for i in net.reticulation_positions)
    if len(choice) != len(retic_ranks):
        raise ValidationError(f"expected {len(retic_ranks)} choice flags")
    if any(flag not in (0, 1) for flag in choice):
        raise ValidationError("choice flags must be 0 or 1")
    dag = code_to_dag(net)
    _, gaps = _sweep_up(dag)

    drop = []
    for flag, k in zip(choice, retic_ranks):
        i = n - k
        ev = net.events[i - 1]
        below = {lab: e for e, lab in gaps[i - 1].items()}
        parent = below[ev.c1][0] if flag == 0 else below[ev.c2][0]
        retic = below[ev.hybrid][0]
        drop.append((parent, retic))

    nodes = {nd.id: nd for nd in dag.nodes}
    edges = [e for e in dag.edges if e not in drop]
    while True:
        indeg = {}
        outdeg = {}
        for u, v in edges:
            outdeg[u] = outdeg.get(u, 0) + 1
            indeg[v] = indeg.get(v, 0) + 1
        spliceable = [x for x in nodes
                      if indeg.get(x, 0) == 1 and outdeg.get(x, 0) == 1]
        if not spliceable:
            break
        x = spliceable[0]
        (above,) = [u for u, v in edges if v == x]
        (below_,) = [v for u, v in edges if u == x]
        edges = [e for e in edges if x not in e]
        edges.append((above, below_))
        del nodes[x]
    return dag_to_code(NetworkDag(n, tuple(nodes.values()), tuple(edges)))


def _decode(tree, net):
    """Decision vector turning `tree` into `net`, or None if there is none.

    Works bottom-up: every open edge of the network is tagged with the
    tree lineage it carries, starting from equal leaf labels, so at each
    reticulation the hybrid child already names the tree lineage it
    continues and the side is forced.
    """
    n = tree.leaves
    dag = code_to_dag(net)
    children = dag.children_of
    parents = dag.parents_of
    lab = {}
    for nd in dag.nodes:
        if nd.kind == LEAF:
            lab[(parents[nd.id][0], nd.id)] = nd.label
    entries = [None] * (n - 1)

    for i in range(1, n):
        k = n - i
        tev = tree.events[i - 1]
        c1, c2 = tev.c1, tev.c2
        group = dag.nodes_at_rank(k)
        if len(group) == 1:
            (t,) = group
            e1, e2 = ((t.id, c) for c in children[t.id])
            if {lab[e1], lab[e2]} != {c1, c2}:
                return None
            del lab[e1], lab[e2]
            entries[k - 1] = KEEP
            lab = {e: (x - 1 if x > c2 else x) for e, x in lab.items()}
            lab[(parents[t.id][0], t.id)] = c1
        else:
            retic = next(nd for nd in group if nd.kind == RETIC)
            eh = (retic.id, children[retic.id][0])
            x_h = lab[eh]
            if x_h not in (c1, c2):
                return None
            side = "L" if x_h == c1 else "R"
            want = c2 if side == "L" else c1
            plain = {}
            for nd in group:
                if nd.kind == TREE:
                    (kid,) = [c for c in children[nd.id] if c != retic.id]
                    plain[nd.id] = lab[(nd.id, kid)]
            match = [p for p, x in plain.items() if x == want]
            if len(match) != 1:
                return None
            p1 = match[0]
            (p2,) = [p for p in plain if p != p1]
            x_m = plain[p2]
            if x_m in (c1, c2):
                return None
            others = [x for x in range(1, k + 2) if x not in (c1, c2)]
            entries[k - 1] = (others.index(x_m) + 1, side)
            del lab[eh], lab[(p1, [c for c in children[p1] if c != retic.id][0])]
            del lab[(p2, [c for c in children[p2] if c != retic.id][0])]
            lab = {e: (x - 1 if x > c2 else x) for e, x in lab.items()}
            lab[(parents[p1][0], p1)] = c1
            lab[(parents[p2][0], p2)] = x_m - 1 if x_m > c2 else x_m
    if list(lab.values()) != [1]:
        return None
    return DecisionVector(n, tuple(entries))


def decisions_from_pair(tree, net):
    """Decision vector with expand(tree, result) == net."""
    _require_tree(tree)
    bad = validate_code(net)
    if bad:
        raise ValidationError(bad)
    if net.leaves != tree.leaves:
        raise ValidationError("tree and network sizes differ")
    dec = _decode(tree, net)
    if dec is None:
        raise ValidationError("the network does not arise from this tree")
    return dec


def contains(tree, net, method="decode"):
    """Does `net` contain `tree` (ranks included)?

    method "decode" reads the decision vector off the network; "oracle"
    tries all 2^k parent-edge removals.  Both agree; the oracle is the
    independent slow path.
    """
    _require_tree(tree)
    bad = validate_code(net)
    if bad:
        raise ValidationError(bad)
    if net.leaves != tree.leaves:
        raise ValidationError("tree and network sizes differ")
    if method == "decode":
        return _decode(tree, net) is not None
    if method == "oracle":
        k = net.reticulation_count
        return any(reduce_by_choice(net, mask) == tree
                   for mask in itertools.product((0, 1), repeat=k))
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Decision vectors <-> labeled history trees <-> plain trees


class _MutNode:
    __slots__ = ("index", "kids", "orig")

    def __init__(self):
        self.index = None
        self.kids = []
        self.orig = None


def _child_key(c):
    return (0, c) if isinstance(c, int) else (1, c.index)


def decisions_to_history(decisions):
    """Grow the labeled history tree of a decision vector.

    Start from leaf 1 on the stem; the k-th entry inserts node k-bar with
    new leaf k+1 either into the stem (keep) or into the edge from node
    i-bar to its smaller (side L) or larger (side R) child.
    """
    bad = validate_decisions(decisions)
    if bad:
        raise ValidationError(bad)
    n = decisions.leaves
    top = 1
    bars = {}
    for k, entry in enumerate(decisions.entries, start=1):
        node = _MutNode()
        node.index = k
        if entry == KEEP:
            node.kids = [top, k + 1]
            top = node
        else:
            i, side = entry
            host = bars[i]
            pick = min if side == "L" else max
            chosen = pick(host.kids, key=_child_key)
            node.kids = [chosen, k + 1]
            host.kids[host.kids.index(chosen)] = node
        bars[k] = node

    def freeze(x):
        if isinstance(x, int):
            return x
        return history_node(x.index, freeze(x.kids[0]), freeze(x.kids[1]))

    return LabeledHistoryTree(n, freeze(top))


def history_to_decisions(history):
    """Read the decision vector back by peeling the history tree."""
    bad = validate_history(history)
    if bad:
        raise ValidationError(bad)
    n = history.leaves
    parent = {}
    kids = {}
    bars = {}

    def walk(node, par):
        key = ("leaf", node) if isinstance(node, int) else ("bar", node.index)
        parent[key] = par
        if not isinstance(node, int):
            bars[node.index] = node
            kids[node.index] = list(node.children)
            for c in node.children:
                walk(c, node)

    walk(history.top, None)
    entries = [None] * (n - 1)
    for k in range(n - 1, 0, -1):
        bar = bars[k]
        par = parent[("bar", k)]
        chosen = next(c for c in kids[k] if not (isinstance(c, int) and c == k + 1))
        if par is None:
            entries[k - 1] = KEEP
        else:
            sibling = next(c for c in kids[par.index] if c is not bar)
            side = "L" if _child_key(chosen) < _child_key(sibling) else "R"
            entries[k - 1] = (par.index, side)
        ck = ("leaf", chosen) if isinstance(chosen, int) else ("bar", chosen.index)
        parent[ck] = par
        if par is not None:
            pk = kids[par.index]
            pk[pk.index(bar)] = chosen
    return DecisionVector(n, tuple(entries))


def label_phylo(tree):
    """Label a plain tree's internal nodes into a history tree.

    Peel leaves n..2; the current parent of the peeled leaf m gets label
    (m-1)-bar and is spliced out.  Every internal node is labeled once.
    """
    bad = validate_phylo(tree)
    if bad:
        raise ValidationError(bad)
    n = tree.leaves
    parent = {}

    def to_mut(shape, par):
        if isinstance(shape, int):
            parent[("leaf", shape)] = par
            return shape
        node = _MutNode()
        node.kids = [to_mut(c, node) for c in shape]
        node.orig = tuple(node.kids)
        parent[node] = par
        return node

    top = to_mut(tree.shape, None)
    for m in range(n, 1, -1):
        par = parent[("leaf", m)]
        if par is None:
            raise ValidationError(f"leaf {m} has no parent to label")
        par.index = m - 1
        sibling = next(c for c in par.kids
                       if not (isinstance(c, int) and c == m))
        grand = parent[par]
        parent[sibling if isinstance(sibling, _MutNode) else ("leaf", sibling)] = grand
        if grand is not None:
            grand.kids[grand.kids.index(par)] = sibling

    def freeze(x):
        if isinstance(x, int):
            return x
        return history_node(x.index, freeze(x.orig[0]), freeze(x.orig[1]))

    return LabeledHistoryTree(n, freeze(top))


def pair_to_phylo(tree, net):
    """Plain tree matched to the containing pair (tree, net)."""
    dec = decisions_from_pair(tree, net)
    return decisions_to_history(dec).strip()


def phylo_to_pair(tree, phylo):
    """Containing network matched to (tree, phylo): inverse of pair_to_phylo."""
    _require_tree(tree)
    bad = validate_phylo(phylo)
    if bad:
        raise ValidationError(bad)
    if phylo.leaves != tree.leaves:
        raise ValidationError("tree and plain tree sizes differ")
    return expand(tree, history_to_decisions(label_phylo(phylo)))
