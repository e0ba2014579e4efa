"""Unary-path (contig) extraction at any order."""
from __future__ import annotations

from .alphabet import SENTINEL
from .boss import NodeHandle
from .errors import OrderError
from .varorder import VarOrderIndex


def order_graph(vi: VarOrderIndex, k: int):
    """Adjacency of the order-k graph restricted to $-free nodes and edges.

    Returns (nodes, labels, out) where ``out[v]`` lists (symbol, target)
    pairs in symbol order."""
    nodes = vi.nodes(k)
    labels = {v: vi.label(v) for v in nodes}
    nodes = [v for v in nodes if SENTINEL not in labels[v]]
    keep = set(nodes)
    out: dict[NodeHandle, list[tuple[str, NodeHandle]]] = {}
    for v in nodes:
        succ = []
        for a in vi.alphabet.symbols:
            w = vi.forward(v, a)
            if w is not None and w in keep:
                succ.append((a, w))
        out[v] = succ
    return nodes, labels, out


def unary_paths(vi: VarOrderIndex, k: int) -> list[str]:
    """Maximal non-branching paths of the order-k graph, spelled out, ordered
    by starting node interval.  Isolated cycles are emitted once, starting
    from their smallest node."""
    if not 0 <= k <= vi.K:
        raise OrderError(f"order {k} outside 0..{vi.K}")
    if k == 0:
        return []
    nodes, labels, out = order_graph(vi, k)
    indeg = {v: 0 for v in nodes}
    for v in nodes:
        for _, w in out[v]:
            indeg[w] += 1

    def unary(v):
        return indeg[v] == 1 and len(out[v]) == 1

    paths = []
    used = set()
    for v in nodes:
        if unary(v):
            continue
        for a, w in out[v]:
            spell = [labels[v], a]
            used.add(v)
            while unary(w):
                used.add(w)
                a, w = out[w][0]
                spell.append(a)
            paths.append((v, "".join(spell)))
    for v in nodes:
        if v in used or not unary(v):
            continue
        # a cycle made only of unary nodes
        spell = [labels[v]]
        w = v
        while True:
            used.add(w)
            a, w = out[w][0]
            if w == v:
                break
            spell.append(a)
        paths.append((v, "".join(spell) + a))
    paths.sort(key=lambda t: t[0])
    return [seq for _, seq in paths]
