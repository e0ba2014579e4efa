"""Variable-order navigation on top of a BOSS index.

``lstar[p]`` is the longest common suffix of the sources of rows p and p+1.
A node of order k is a maximal row run whose internal boundaries all have
``lstar >= k``, so changing order is a threshold search over ``lstar``.
"""
from __future__ import annotations

import numpy as np

from .boss import BossIndex, EdgeMatrix, NodeHandle
from .errors import ConstructionError, HandleError, OrderError
from .succinct import WaveletTree

ANY = "*"


def build_lstar(boss: BossIndex, matrix: EdgeMatrix) -> WaveletTree:
    lcs = matrix.lcs()
    if lcs.size != boss.n_rows - 1 or matrix.K != boss.K:
        raise ConstructionError(
            f"matrix has {len(matrix)} rows for an index of {boss.n_rows} rows")
    return WaveletTree(lcs, boss.K + 1)


class VarOrderIndex:
    """All de Bruijn graphs of order 0..K in one structure."""

    def __init__(self, boss: BossIndex, lstar: WaveletTree):
        if len(lstar) != boss.n_rows - 1 or lstar.sigma != boss.K + 1:
            raise ConstructionError("lstar must hold n_rows - 1 values over 0..K")
        self.boss = boss
        self.lstar = lstar
        self.K = boss.K
        self.n_rows = boss.n_rows
        self.alphabet = boss.alphabet

    @classmethod
    def build(cls, matrix: EdgeMatrix) -> "VarOrderIndex":
        boss = BossIndex.build(matrix)
        return cls(boss, build_lstar(boss, matrix))

    @property
    def root(self) -> NodeHandle:
        """The single node of the order-0 graph."""
        return NodeHandle(1, self.n_rows, 0)

    def _check(self, v: NodeHandle) -> None:
        if not 0 <= v.k <= self.K:
            raise HandleError(f"order {v.k} outside 0..{self.K}")
        if not 1 <= v.i <= v.j <= self.n_rows:
            raise HandleError(f"interval [{v.i}, {v.j}] outside rows 1..{self.n_rows}")

    def check_handle(self, v: NodeHandle) -> None:
        """Raise HandleError naming the first violated condition."""
        self._check(v)
        i, j, k = v
        lstar = self.lstar
        if i > 1 and lstar.access(i - 1) >= k:
            raise HandleError(f"row {i - 1} shares the length-{k} suffix of row {i}")
        if j < self.n_rows and lstar.access(j) >= k:
            raise HandleError(f"row {j + 1} shares the length-{k} suffix of row {j}")
        if i < j:
            split = lstar.next_below(i, k)
            if split is not None and split < j:
                raise HandleError(f"rows {split} and {split + 1} differ in their "
                                  f"length-{k} suffix")

    def validate_handle(self, v: NodeHandle) -> bool:
        try:
            self.check_handle(v)
        except HandleError:
            return False
        return True

    # -- order changes ------------------------------------------------------

    def _shorter(self, i: int, j: int, k: int) -> NodeHandle:
        lstar = self.lstar
        lo = lstar.prev_below(i - 1, k) if i > 1 else None
        hi = lstar.next_below(j, k) if j < self.n_rows else None
        return NodeHandle(1 if lo is None else lo + 1,
                          self.n_rows if hi is None else hi, k)

    def shorter(self, v: NodeHandle, k: int) -> NodeHandle:
        self._check(v)
        if not 0 <= k <= v.k:
            raise OrderError(f"shorter needs 0 <= k <= {v.k}, got {k}")
        return self._shorter(v.i, v.j, k)

    def longer(self, v: NodeHandle, k: int) -> list[NodeHandle]:
        self._check(v)
        if not v.k <= k <= self.K:
            raise OrderError(f"longer needs {v.k} <= k <= {self.K}, got {k}")
        bounds = [v.i - 1, *self.lstar.range_below(v.i, v.j - 1, k), v.j]
        return [NodeHandle(b + 1, b2, k) for b, b2 in zip(bounds, bounds[1:])]

    def maxlen(self, v: NodeHandle, a: str = ANY) -> NodeHandle | None:
        """An order-K node whose label ends with v's label and which has an
        outgoing ``a`` edge; ``a='*'`` drops the edge condition."""
        self._check(v)
        boss = self.boss
        if a == ANY:
            r = v.i
        else:
            r = boss._edge_row(v.i, v.j, boss._symbol(a))
            if r is None:
                return None
        return NodeHandle(*boss._row_interval(r), self.K)

    # -- navigation at any order ----------------------------------------------

    def forward(self, v: NodeHandle, a: str) -> NodeHandle | None:
        if v.k == self.K:
            return self.boss.forward(v, a)
        self._check(v)
        if v.k == 0:
            raise OrderError("forward is undefined on the order-0 node")
        boss = self.boss
        c = boss._symbol(a)
        if c == 0:
            return None
        r = boss._edge_row(v.i, v.j, c)
        if r is None:
            return None
        ti, tj = boss._forward_row(r, c)
        return self._shorter(ti, tj, v.k)

    def _backward_candidates(self, v: NodeHandle) -> list[NodeHandle]:
        # one predecessor per order-K extension suffices: all predecessors of
        # one extension shorten to the same node
        boss = self.boss
        out = []
        for x in self.longer(v, v.k + 1):
            preds = boss._predecessor_rows(x.i, first_only=True)
            if preds:
                # a single row below order K shortens like its whole node
                out.append(self._shorter(preds[0], preds[0], v.k))
        return out

    def backward(self, v: NodeHandle) -> list[NodeHandle]:
        if v.k == self.K:
            return self.boss.backward(v)
        self._check(v)
        return sorted(set(self._backward_candidates(v)))

    def lastchar(self, v: NodeHandle) -> str | None:
        self._check(v)
        if v.k == 0:
            return None
        boss = self.boss
        return boss._chars[boss._lastchar_code(v.i)]

    def label(self, v: NodeHandle) -> str:
        self._check(v)
        return self.boss._suffix(v.i, v.k)

    def nodes(self, k: int) -> list[NodeHandle]:
        """Every node of the order-k graph, ascending."""
        return self.longer(self.root, k)

    def graph_stats(self) -> dict:
        stats = self.boss.graph_stats()
        boss_bits = stats["bits"]["total"]
        stats["bits"]["lstar"] = self.lstar.size_in_bits
        stats["bits"]["total"] = boss_bits + self.lstar.size_in_bits
        stats["boss_bits"] = boss_bits
        stats["size_ratio"] = stats["bits"]["total"] / boss_bits
        return stats

    def lstar_values(self) -> np.ndarray:
        return self.lstar.to_numpy()
