"""Brute-force de Bruijn graphs over explicit strings, for checking the index."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .alphabet import SENTINEL
from .boss import NodeHandle
from .errors import HandleError, OrderError
from .varorder import VarOrderIndex

MAX_ORACLE_ROWS = 100_000


@dataclass
class OracleGraph:
    k: int
    nodes: set[str]
    edges: dict[str, set[tuple[str, str]]] = field(default_factory=dict)

    def successor(self, u: str, a: str) -> str | None:
        for sym, w in self.edges.get(u, ()):
            if sym == a:
                return w
        return None

    def predecessors(self) -> dict[str, set[str]]:
        preds = defaultdict(set)
        for u, out in self.edges.items():
            for _, w in out:
                preds[w].add(u)
        return preds


def _split(row) -> tuple[str, str]:
    if isinstance(row, str):
        return row[:-1], row[-1]
    return row[0], row[1]


def oracle_build(rows: Iterable, k: int) -> OracleGraph:
    """Order-k graph from dummy-closed rows, given as (source, label) pairs
    or (K+1)-strings.  Nodes are the distinct length-k source suffixes; each
    non-$ row contributes the edge it induces between suffixes."""
    rows = [_split(r) for r in rows]
    if not rows:
        raise ValueError("oracle needs at least one row")
    K = len(rows[0][0])
    if not 0 <= k <= K:
        raise OrderError(f"oracle order {k} outside 0..{K}")
    nodes = {src[K - k:] for src, _ in rows}
    edges: dict[str, set[tuple[str, str]]] = defaultdict(set)
    for src, a in rows:
        if a == SENTINEL:
            continue
        u = src[K - k:]
        w = (src + a)[K + 1 - k:]
        edges[u].add((a, w))
    return OracleGraph(k, nodes, dict(edges))


def oracle_compare(vi: VarOrderIndex, og: OracleGraph) -> list[str]:
    """Mismatches between the index and the oracle at order ``og.k``.
    An empty list means they agree."""
    k = og.k
    problems: list[str] = []
    handles = vi.nodes(k)
    label_of: dict[NodeHandle, str] = {}
    for v in handles:
        try:
            lab = vi.label(v)
        except Exception as exc:  # corrupted structures can fail anywhere
            problems.append(f"label: {v} raised {exc!r}")
            continue
        label_of[v] = lab
    labels = set(label_of.values())
    if len(labels) != len(label_of):
        problems.append(f"nodes: order {k} has duplicate labels")
    if labels != og.nodes:
        missing = sorted(og.nodes - labels)[:5]
        extra = sorted(labels - og.nodes)[:5]
        problems.append(f"nodes: order {k} label sets differ "
                        f"(missing {missing}, unexpected {extra})")

    def name(h):
        return label_of.get(h, f"<non-node {h}>") if h is not None else None

    preds = og.predecessors()
    symbols = vi.alphabet.chars
    for v, lab in label_of.items():
        try:
            last = vi.lastchar(v)
            if last != (lab[-1] if k else None):
                problems.append(f"lastchar: {v} gave {last!r} for label {lab!r}")
            if k >= 1:
                for a in symbols:
                    got = name(vi.forward(v, a))
                    want = og.successor(lab, a)
                    if got != want:
                        problems.append(f"forward: {lab!r} --{a}--> {got!r}, oracle {want!r}")
            got_preds = [name(u) for u in vi.backward(v)]
            if sorted(got_preds) != sorted(preds.get(lab, ())):
                problems.append(f"backward: {lab!r} -> {sorted(got_preds)}, "
                                f"oracle {sorted(preds.get(lab, ()))}")
            if k < vi.K:
                for x in vi.longer(v, k + 1):
                    if vi.shorter(x, k) != v:
                        problems.append(f"shorter/longer: shorter({x}, {k}) != {v}")
            if k > 0:
                up = vi.shorter(v, k - 1)
                if vi.label(up) != lab[1:]:
                    problems.append(f"shorter: {v} -> {up}, label {vi.label(up)!r}")
        except (HandleError, OrderError, LookupError, ValueError) as exc:
            problems.append(f"error: {v} raised {exc!r}")
    return problems


def symmetry_violations(vi: VarOrderIndex, k: int) -> list[str]:
    """Check, for every order-k node v and every k <= kx <= K, that longer(v, kx)
    partitions v's interval and that each result shortens back to v."""
    problems = []
    for v in vi.nodes(k):
        for kx in range(k, vi.K + 1):
            parts = vi.longer(v, kx)
            if parts[0].i != v.i or parts[-1].j != v.j or any(
                    a.j + 1 != b.i for a, b in zip(parts, parts[1:])):
                problems.append(f"partition: longer({v}, {kx}) = {parts}")
            for x in parts:
                if vi.shorter(x, k) != v:
                    problems.append(f"symmetry: shorter({x}, {k}) != {v}")
    return problems
