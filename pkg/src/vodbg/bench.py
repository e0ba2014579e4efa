"""Query latency benchmark over randomly sampled nodes.

Nodes are sampled by drawing a row uniformly and an order uniformly from
``[min(8, K), K]``; the row's order-K node is then shortened to that order.
Every operation replays the same query list for the BOSS-only variant (where
one exists) and the variable-order index, so the two columns are comparable.
"""
from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .boss import NodeHandle
from .varorder import ANY, VarOrderIndex

OPS = ("forward", "backward", "lastchar", "shorter_1", "shorter_4",
       "longer_1", "longer_4", "maxlen", "maxlen_c", "forward_K")
MIN_BENCH_ORDER = 8


@dataclass
class BenchRow:
    op: str
    n: int
    boss_us: float | None
    vo_us: float
    digest: str


def _orders(rng, K: int, n: int, lo: int, hi: int) -> np.ndarray:
    lo, hi = max(0, min(lo, K)), max(0, min(hi, K))
    if lo > hi:
        lo = hi
    return rng.integers(lo, hi + 1, size=n)


def sample_queries(vi: VarOrderIndex, n: int, seed: int) -> dict[str, list]:
    """Argument lists for each operation; depends only on (index, n, seed)."""
    rng = np.random.default_rng(seed)
    K = vi.K
    lo = min(MIN_BENCH_ORDER, K)
    syms = vi.alphabet.symbols
    boss = vi.boss

    def nodes(orders):
        rows = rng.integers(1, vi.n_rows + 1, size=len(orders))
        return [vi._shorter(*boss._row_interval(int(r)), int(k))
                for r, k in zip(rows, orders)]

    def symbols(m):
        return [syms[int(x)] for x in rng.integers(0, len(syms), size=m)]

    q: dict[str, list] = {}
    vs = nodes(_orders(rng, K, n, max(lo, 1), K))
    q["forward"] = list(zip(vs, symbols(n)))
    q["backward"] = nodes(_orders(rng, K, n, lo, K))
    q["lastchar"] = nodes(_orders(rng, K, n, max(lo, 1), K))
    for d in (1, 4):
        vs = nodes(_orders(rng, K, n, max(lo, d), K))
        q[f"shorter_{d}"] = [(v, max(0, v.k - d)) for v in vs]
        vs = nodes(_orders(rng, K, n, lo, K - d))
        q[f"longer_{d}"] = [(v, min(K, v.k + d)) for v in vs]
    q["maxlen"] = nodes(_orders(rng, K, n, lo, K))
    vs = nodes(_orders(rng, K, n, lo, K))
    q["maxlen_c"] = list(zip(vs, symbols(n)))
    q["forward_K"] = list(zip(nodes([K] * n), symbols(n)))
    return q


def _calls(vi: VarOrderIndex, op: str, args: list):
    """(boss_fn, vo_fn, args) for one op; boss_fn is None when BOSS has no
    counterpart.  BOSS variants run on each sample's order-K node."""
    boss = vi.boss
    K = vi.K

    def top(v):
        return NodeHandle(*boss._row_interval(v.i), K)

    if op in ("forward", "forward_K"):
        return (boss.forward, vi.forward,
                args, [(top(v), a) for v, a in args])
    if op == "backward":
        return boss.backward, vi.backward, [(v,) for v in args], [(top(v),) for v in args]
    if op == "lastchar":
        return boss.lastchar, vi.lastchar, [(v,) for v in args], [(top(v),) for v in args]
    if op.startswith("shorter"):
        return None, vi.shorter, args, None
    if op.startswith("longer"):
        return None, vi.longer, args, None
    if op == "maxlen":
        return None, vi.maxlen, [(v, ANY) for v in args], None
    if op == "maxlen_c":
        return None, vi.maxlen, args, None
    raise ValueError(f"unknown bench op {op!r}")


def _time(fn: Callable, arglist: list) -> tuple[float, list]:
    t0 = time.perf_counter()
    res = [fn(*a) for a in arglist]
    return (time.perf_counter() - t0) / max(1, len(arglist)) * 1e6, res


def run_bench(vi: VarOrderIndex, n: int, seed: int, repeats: int = 3,
              ops=OPS) -> list[BenchRow]:
    """Mean microseconds per query.  Repeats are interleaved across ops and
    the fastest repeat is kept, which damps scheduler noise."""
    if n < 1:
        raise ValueError("need at least one query")
    queries = sample_queries(vi, n, seed)
    plans = {op: _calls(vi, op, queries[op]) for op in ops}
    best_vo = {op: float("inf") for op in ops}
    best_boss: dict[str, float] = {}
    digests = {}
    for _ in range(repeats):
        for op in ops:
            boss_fn, vo_fn, vo_args, boss_args = plans[op]
            us, res = _time(vo_fn, vo_args)
            best_vo[op] = min(best_vo[op], us)
            digests[op] = hashlib.sha1(repr(res).encode()).hexdigest()[:12]
            if boss_fn is not None:
                us, _ = _time(boss_fn, boss_args)
                best_boss[op] = min(best_boss.get(op, float("inf")), us)
    return [BenchRow(op, n, best_boss.get(op), best_vo[op], digests[op]) for op in ops]


def format_table(rows: list[BenchRow]) -> str:
    lines = [f"{'op':<10} {'queries':>8} {'boss_us':>10} {'vo_us':>10}  digest"]
    for r in rows:
        boss = "-" if r.boss_us is None else f"{r.boss_us:.2f}"
        lines.append(f"{r.op:<10} {r.n:>8} {boss:>10} {r.vo_us:>10.2f}  {r.digest}")
    return "\n".join(lines)
