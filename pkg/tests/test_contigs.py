from __future__ import annotations

from vodbg.boss import EdgeMatrix
from vodbg.contigs import unary_paths
from vodbg.synthetic import random_genome, sample_reads
from vodbg.varorder import VarOrderIndex

import numpy as np


def test_toy_contigs(toy):
    paths = unary_paths(toy, 3)
    assert paths == ["CGAC", "GACG", "GACT", "TACG", "ACGA", "ACGTCGA"]
    # GAC and ACG branch, so no path runs through them
    assert not any("GACG" in p and len(p) > 4 for p in paths)


def test_order_zero_is_empty(toy):
    assert unary_paths(toy, 0) == []


def test_isolated_cycle():
    # every node of ACGTT... rotations has in = out = 1
    cyc = "ACGTTGCA"
    kmers = sorted({(cyc * 2)[p:p + 5] for p in range(len(cyc))})
    vi = VarOrderIndex.build(EdgeMatrix.from_edges(kmers, 4))
    (path,) = unary_paths(vi, 4)
    assert len(path) == len(cyc) + 4
    assert path[:4] == path[-4:]
    assert path[:-4] in cyc * 2


def test_contigs_spell_graph_walks():
    rng = np.random.default_rng(2)
    g = random_genome(300, rng)
    vi = VarOrderIndex.build(EdgeMatrix.from_reads(sample_reads(g, 40, rng), 6))
    paths = unary_paths(vi, 6)
    assert paths
    kmers = {g[p:p + 7] for p in range(len(g) - 6)}
    for p in paths:
        for q in range(len(p) - 6):
            assert p[q:q + 7] in kmers
