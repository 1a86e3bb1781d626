"""Bijection between networks and (ranked tree, permutation) pairs.

Each reticulation event, taken bottom-up, is rewritten into a branching
event: the two parent lineages fuse over the non-hybrid children and the
hybrid lineage takes over the freed position above the event.  Every
rewrite yields one transposition (a, a+b) on 1..n-1; their left-to-right
product is the permutation paired with the final ranked tree.  The
factorisation is unique once first coordinates increase strictly, so the
pair determines the network.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    RETIC,
    TREE,
    Branching,
    DagNode,
    NetworkDag,
    Permutation,
    Reticulation,
    TranspositionSeq,
    ValidationError,
    _sweep_up,
    code_to_dag,
    dag_to_code,
    validate_perm,
    validate_transpositions,
)


@dataclass(frozen=True)
class ReplacementStep:
    """Record of one reticulation rewrite at bottom-up event `a`.

    c1 < c2 are the non-hybrid child lineages, `hybrid` the hybrid one;
    l1 < l2 number the parent lineages above the event before the rewrite,
    l1_after / l2_after the fused parent and the freed hybrid lineage after
    it.  `b` encodes the hybrid's position among the lineages above the
    event other than the parent, giving the transposition (a, a + b).
    """

    a: int
    c1: int
    c2: int
    hybrid: int
    l1: int
    l2: int
    l1_after: int
    l2_after: int
    b: int

    def as_tuple(self):
        return (self.c1, self.c2, self.hybrid,
                self.l1, self.l2, self.l1_after, self.l2_after)


def replace_retic(code, i):
    """Rewrite the reticulation at bottom-up index `i` into a branching.

    Returns (rewritten code, ReplacementStep).  Event kinds elsewhere are
    untouched; lineage numbers above the event are re-derived by sweeping
    the modified DAG.
    """
    ev = code.events[i - 1] if 1 <= i <= len(code.events) else None
    if not isinstance(ev, Reticulation):
        raise ValidationError(f"event {i} is not a reticulation")
    n = code.leaves
    c1, c2, h = ev.c1, ev.c2, ev.hybrid
    dag = code_to_dag(code)
    _, gaps = _sweep_up(dag)
    below = {lab: e for e, lab in gaps[i - 1].items()}
    p_small, _ = below[c1]
    p_large, x2 = below[c2]
    r, x3 = below[h]
    (u2,) = dag.parents_of[p_large]

    nodes = {nd.id: nd for nd in dag.nodes}
    del nodes[p_large]
    del nodes[r]
    edges = [e for e in dag.edges
             if e not in ((u2, p_large), (p_large, r), (p_small, r),
                          (p_large, x2), (r, x3))]
    edges.extend([(p_small, x2), (u2, x3)])
    rewritten = dag_to_code(NetworkDag(n, tuple(nodes.values()), tuple(edges)))

    l1 = c1 - (1 if h < c1 else 0)
    l2 = c2 - (1 if h < c2 else 0)
    l1_after = c1
    l2_after = h - (1 if c2 < h else 0)
    b = l2_after if l2_after < l1_after else l2_after - 1
    step = ReplacementStep(i, c1, c2, h, l1, l2, l1_after, l2_after, b)
    return rewritten, step


def insert_retic(code, a, b):
    """Inverse rewrite: turn the branching at bottom-up index `a` back
    into a reticulation whose hybrid lineage is read off `b`.

    Among the lineages numbered above event `a`, the parent of the
    branching carries the smaller child's number; counting the others,
    the b-th one donates its past to the larger child and its future
    becomes the hybrid lineage.
    """
    ev = code.events[a - 1] if 1 <= a <= len(code.events) else None
    if not isinstance(ev, Branching):
        raise ValidationError(f"event {a} is not a branching")
    n = code.leaves
    if not 1 <= b <= n - 1 - a:
        raise ValidationError(f"offset must lie in 1..{n - 1 - a}, got {b}")
    dag = code_to_dag(code)
    _, gaps = _sweep_up(dag)
    below = {lab: e for e, lab in gaps[a - 1].items()}
    t, _ = below[ev.c1]
    _, x2 = below[ev.c2]
    above = {lab: e for e, lab in gaps[a].items()}
    j = b + 1 if b >= ev.c1 else b
    u, v = above[j]

    k = n - a
    p2 = 1 + max(nd.id for nd in dag.nodes)
    r = p2 + 1
    nodes = {nd.id: nd for nd in dag.nodes}
    nodes[p2] = DagNode(p2, TREE, rank=k)
    nodes[r] = DagNode(r, RETIC, rank=k)
    edges = [e for e in dag.edges if e not in ((t, x2), (u, v))]
    edges.extend([(u, p2), (p2, x2), (p2, r), (t, r), (r, v)])
    return dag_to_code(NetworkDag(n, tuple(nodes.values()), tuple(edges)))


def transpositions_to_perm(seq):
    """Product of `seq` applied left to right (first pair acts first)."""
    bad = validate_transpositions(seq)
    if bad:
        raise ValidationError(bad)
    image = list(range(1, seq.n + 1))
    for x, y in seq.pairs:
        for idx in range(seq.n):
            if image[idx] == x:
                image[idx] = y
            elif image[idx] == y:
                image[idx] = x
    return Permutation(seq.n, tuple(image))


def perm_to_transpositions(perm):
    """Unique factorisation with strictly increasing first coordinates.

    Repeatedly take the smallest non-fixed point x and pair it with the
    position currently mapping to x; swapping those entries fixes x.
    """
    bad = validate_perm(perm)
    if bad:
        raise ValidationError(bad)
    image = list(perm.image)
    pairs = []
    for x in range(1, perm.n + 1):
        if image[x - 1] != x:
            y = image.index(x) + 1
            pairs.append((x, y))
            image[x - 1], image[y - 1] = image[y - 1], image[x - 1]
    return TranspositionSeq(perm.n, tuple(pairs))


def cycle_count(perm):
    return len(perm.cycles())


def replacement_steps(code):
    """Replace every reticulation bottom-up; return (tree, step list)."""
    work = code
    steps = []
    for a in code.reticulation_positions:
        work, step = replace_retic(work, a)
        steps.append(step)
    return work, steps


def rtcn_to_treeperm(code):
    """Map `code` to its (ranked tree, permutation) pair."""
    work, steps = replacement_steps(code)
    pairs = tuple((step.a, step.a + step.b) for step in steps)
    seq = TranspositionSeq(code.leaves - 1, pairs)
    return work, transpositions_to_perm(seq)


def treeperm_to_rtcn(tree, perm):
    """Inverse of rtcn_to_treeperm."""
    if not tree.is_ranked_tree:
        raise ValidationError("expected a ranked tree (branching events only)")
    if perm.n != tree.leaves - 1:
        raise ValidationError(f"permutation degree must be {tree.leaves - 1}")
    seq = perm_to_transpositions(perm)
    code = tree
    for x, y in reversed(seq.pairs):
        code = insert_retic(code, x, y - x)
    return code
