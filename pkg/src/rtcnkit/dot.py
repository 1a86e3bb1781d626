"""DOT rendering for the package's objects.

Node names are derived from ranks and leaf labels, never from internal
ids, so equal objects always render to byte-identical text.  Reticulation
nodes come out as filled boxes; every event level is pinned to its own
horizontal rank so the picture matches the level-by-level drawings.
"""

from __future__ import annotations

from .boat import boat_to_rtcn, rank_unmap
from .containment import decisions_to_history
from .core import (
    BoatSequence,
    DecisionVector,
    EventCode,
    LabeledHistoryTree,
    Permutation,
    PhyloTree,
    RankArray,
    Reticulation,
    TranspositionSeq,
    _sweep_up,
    code_to_dag,
)
from .treeperm import transpositions_to_perm

_RETIC_STYLE = 'shape=box, style=filled, fillcolor="#bfd7ff"'


def dot_network(code):
    """Render a network (or ranked tree) code as a DOT digraph."""
    dag = code_to_dag(code)
    n = code.leaves
    _, gaps = _sweep_up(dag)

    names = {dag.root_id: "root"}
    for nd in dag.nodes:
        if nd.kind == "leaf":
            names[nd.id] = f"leaf{nd.label}"
    for i, ev in enumerate(code.events, start=1):
        k = n - i
        below = {lab: e for e, lab in gaps[i - 1].items()}
        if isinstance(ev, Reticulation):
            names[below[ev.hybrid][0]] = f"r{k}"
            names[below[ev.c1][0]] = f"p{k}a"
            names[below[ev.c2][0]] = f"p{k}b"
        else:
            names[below[ev.c1][0]] = f"b{k}"

    lines = ["digraph rtcn {", "  rankdir=TB;"]
    lines.append('  root [shape=point];')
    for i, ev in enumerate(code.events, start=1):
        k = n - i
        if isinstance(ev, Reticulation):
            lines.append(f'  p{k}a [shape=circle, label="{k}"];')
            lines.append(f'  p{k}b [shape=circle, label="{k}"];')
            lines.append(f'  r{k} [{_RETIC_STYLE}, label="{k}"];')
            lines.append(f"  {{rank=same; p{k}a; p{k}b; r{k};}}")
        else:
            lines.append(f'  b{k} [shape=circle, label="{k}"];')
    for j in range(1, n + 1):
        lines.append(f'  leaf{j} [shape=none, label="{j}"];')
    lines.append("  {rank=same; " + " ".join(f"leaf{j};" for j in range(1, n + 1)) + "}")
    for u, v in sorted(dag.edges, key=lambda e: (names[e[0]], names[e[1]])):
        lines.append(f"  {names[u]} -> {names[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _shape_name(node):
    if isinstance(node, int):
        return f"leaf{node}"
    leaves = []

    def walk(x):
        if isinstance(x, int):
            leaves.append(x)
        else:
            for c in x:
                walk(c)

    walk(node)
    return "v" + "_".join(str(x) for x in sorted(leaves))


def dot_phylo(tree):
    """Render a plain tree as a DOT digraph; internal nodes are unlabeled."""
    lines = ["digraph phylo {", "  rankdir=TB;"]
    nodes = []
    edges = []

    def walk(node):
        name = _shape_name(node)
        if isinstance(node, int):
            nodes.append(f'  {name} [shape=none, label="{node}"];')
        else:
            nodes.append(f'  {name} [shape=point];')
            for c in node:
                edges.append(f"  {name} -> {_shape_name(c)};")
                walk(c)

    walk(tree.shape)
    lines.extend(nodes)
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_history(history):
    """Render a labeled history tree; bar labels show as primes."""
    lines = ["digraph history {", "  rankdir=TB;", "  stem [shape=point];"]
    nodes = []
    edges = []

    def name(node):
        return f"leaf{node}" if isinstance(node, int) else f"bar{node.index}"

    def walk(node):
        if isinstance(node, int):
            nodes.append(f'  leaf{node} [shape=none, label="{node}"];')
        else:
            nodes.append(f'  bar{node.index} [shape=circle, label="{node.index}\'"];')
            for c in node.children:
                edges.append(f"  {name(node)} -> {name(c)};")
                walk(c)

    walk(history.top)
    lines.extend(nodes)
    lines.append(f"  stem -> {name(history.top)};")
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_permutation(perm):
    """Render a permutation as its functional digraph i -> image(i)."""
    lines = ["digraph perm {"]
    for i in range(1, perm.n + 1):
        lines.append(f'  e{i} [shape=circle, label="{i}"];')
    for i, img in enumerate(perm.image, start=1):
        lines.append(f"  e{i} -> e{img};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj):
    """DOT text for any of the package's objects.

    Boat sequences render as their network; decision vectors as their
    history tree; transposition sequences as their product permutation.
    """
    if isinstance(obj, EventCode):
        return dot_network(obj)
    if isinstance(obj, PhyloTree):
        return dot_phylo(obj)
    if isinstance(obj, LabeledHistoryTree):
        return dot_history(obj)
    if isinstance(obj, BoatSequence):
        return dot_network(boat_to_rtcn(obj))
    if isinstance(obj, RankArray):
        return dot_network(boat_to_rtcn(rank_unmap(obj)))
    if isinstance(obj, DecisionVector):
        return dot_history(decisions_to_history(obj))
    if isinstance(obj, Permutation):
        return dot_permutation(obj)
    if isinstance(obj, TranspositionSeq):
        return dot_permutation(transpositions_to_perm(obj))
    raise TypeError(f"cannot render {type(obj).__name__} as DOT")
