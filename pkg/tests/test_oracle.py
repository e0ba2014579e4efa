from __future__ import annotations

import numpy as np
import pytest

from vodbg.boss import EdgeMatrix
from vodbg.errors import OrderError
from vodbg.oracle import oracle_build, oracle_compare, symmetry_violations
from vodbg.succinct import WaveletTree
from vodbg.synthetic import random_genome, sample_reads
from vodbg.varorder import VarOrderIndex

from conftest import TOY_ORDER2


def test_oracle_node_sets(toy_matrix):
    rows = toy_matrix.rows
    assert oracle_build(rows, 2).nodes == {lab for _, lab in TOY_ORDER2}
    assert oracle_build(rows, 1).nodes == set("$ACGT")
    assert oracle_build(rows, 0).nodes == {""}


def test_oracle_accepts_strings(toy_matrix):
    as_str = [s + a for s, a in toy_matrix.rows]
    assert oracle_build(as_str, 3) == oracle_build(toy_matrix.rows, 3)


def test_oracle_edges_shift(toy_matrix):
    for k in range(4):
        og = oracle_build(toy_matrix.rows, k)
        for u, out in og.edges.items():
            for a, w in out:
                assert w == (u + a)[1:] if k else w == ""


def test_oracle_order_consistency(toy_matrix):
    for k in range(1, 4):
        hi = oracle_build(toy_matrix.rows, k)
        lo = oracle_build(toy_matrix.rows, k - 1)
        assert {n[1:] for n in hi.nodes} == lo.nodes


def test_oracle_order_range(toy_matrix):
    with pytest.raises(OrderError):
        oracle_build(toy_matrix.rows, 4)


def test_toy_reports_are_empty(toy, toy_matrix):
    for k in range(4):
        assert oracle_compare(toy, oracle_build(toy_matrix.rows, k)) == []
        assert symmetry_violations(toy, k) == []


def test_corrupted_lstar_is_reported(toy, toy_matrix):
    bad = toy.lstar_values().copy()
    bad[4] = 0  # GAC|TAC boundary claims no shared suffix
    vi = VarOrderIndex(toy.boss, WaveletTree(bad, 4))
    report = [p for k in range(4) for p in oracle_compare(vi, oracle_build(toy_matrix.rows, k))]
    assert report
    assert any(p.split(":")[0] in {"nodes", "forward", "backward"} for p in report)


def test_random_instance_all_orders():
    rng = np.random.default_rng(8)
    reads = sample_reads(random_genome(400, rng), 50, rng)
    m = EdgeMatrix.from_reads(reads, 8)
    vi = VarOrderIndex.build(m)
    for k in range(9):
        assert oracle_compare(vi, oracle_build(m.rows, k)) == []
