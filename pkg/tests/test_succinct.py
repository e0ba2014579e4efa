from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vodbg.errors import AlphabetError, NotFoundError
from vodbg.succinct import BitVector, WaveletTree

from conftest import TOY_L, TOY_LSTAR, TOY_W

W_CODES = ["$ACGT".index(c) for c in TOY_W]


@pytest.fixture
def L():
    return BitVector(TOY_L)


@pytest.fixture
def W():
    return WaveletTree(W_CODES, 5)


@pytest.fixture
def lstar():
    return WaveletTree(TOY_LSTAR, 4)


def test_bv_rank_examples(L):
    assert L.rank(5, 1) == 4
    assert L.rank(0, 1) == 0
    assert L.rank(13, 0) == 2


def test_bv_select_examples(L):
    assert L.select(4, 1) == 5
    assert L.select(1, 0) == 4
    assert L.select(1, 1) == 1


def test_bv_errors(L):
    with pytest.raises(IndexError):
        L.rank(14)
    with pytest.raises(NotFoundError):
        L.select(3, 0)
    with pytest.raises(NotFoundError):
        L.select(0, 1)
    with pytest.raises(IndexError):
        L.access(0)


def test_bv_roundtrip_str(L):
    assert str(L) == TOY_L
    assert L == BitVector([int(c) for c in TOY_L])


def test_wt_rank_select_examples(W):
    G, A, C, T, S = 3, 1, 2, 4, 0
    assert W.rank(7, G) == 3
    assert W.rank(0, A) == 0
    assert W.rank(13, S) == 1
    assert W.select(1, A) == 8
    assert W.select(2, C) == 3
    assert W.select(1, T) == 1


def test_wt_errors(W):
    with pytest.raises(AlphabetError):
        W.rank(3, 5)
    with pytest.raises(NotFoundError):
        W.select(2, 0)
    with pytest.raises(AlphabetError):
        WaveletTree([0, 3], 3)


def test_threshold_examples(lstar):
    assert lstar.prev_below(3, 2) == 3
    assert lstar.prev_below(5, 0) is None
    assert lstar.prev_below(12, 1) == 10
    assert lstar.next_below(5, 2) == 6
    assert lstar.next_below(4, 4) == 4
    assert lstar.next_below(11, 1) is None
    assert lstar.range_below(3, 6, 3) == [3, 5, 6]
    assert lstar.range_below(1, 12, 0) == []
    assert lstar.range_below(1, 12, 4) == list(range(1, 13))
    assert lstar.range_below(6, 5, 2) == []


def test_to_numpy_decodes(W, lstar):
    assert W.to_list() == W_CODES
    assert lstar.to_list() == TOY_LSTAR


def test_single_symbol_alphabet():
    wt = WaveletTree([0, 0, 0], 1)
    assert wt.rank(3, 0) == 3 and wt.select(2, 0) == 2
    assert wt.range_below(1, 3, 1) == [1, 2, 3]


def test_block_boundaries():
    rng = np.random.default_rng(5)
    bits = rng.random(512 * 3 + 7) < 0.5
    bv = BitVector(bits)
    ones = np.flatnonzero(bits) + 1
    zeros = np.flatnonzero(~bits) + 1
    for j in (1, len(ones) // 2, len(ones)):
        assert bv.select(j) == ones[j - 1]
    for j in (1, len(zeros)):
        assert bv.select(j, 0) == zeros[j - 1]
    for i in (0, 511, 512, 513, 1024, len(bits)):
        assert bv.rank(i) == bits[:i].sum()


# -- property tests against linear scans ------------------------------------------

bit_lists = st.lists(st.booleans(), min_size=1, max_size=2000)


@settings(max_examples=60, deadline=None)
@given(bit_lists)
def test_bv_matches_scan(bits):
    bv = BitVector(bits)
    arr = np.array(bits, dtype=bool)
    prefix = np.concatenate([[0], np.cumsum(arr)])
    assert [bv.rank(i) for i in range(len(bits) + 1)] == prefix.tolist()
    ones = (np.flatnonzero(arr) + 1).tolist()
    zeros = (np.flatnonzero(~arr) + 1).tolist()
    assert [bv.select(j, 1) for j in range(1, len(ones) + 1)] == ones
    assert [bv.select(j, 0) for j in range(1, len(zeros) + 1)] == zeros
    assert [bv.access(p) for p in range(1, len(bits) + 1)] == arr.astype(int).tolist()
    # select(rank(i)) <= i
    for i in range(1, len(bits) + 1):
        r = bv.rank(i)
        if r:
            assert bv.select(r) <= i


@st.composite
def sequences(draw, max_len=600):
    sigma = draw(st.integers(1, 40))
    seq = draw(st.lists(st.integers(0, sigma - 1), min_size=1, max_size=max_len))
    return seq, sigma


@settings(max_examples=60, deadline=None)
@given(sequences())
def test_wt_matches_scan(data):
    seq, sigma = data
    wt = WaveletTree(seq, sigma)
    n = len(seq)
    assert [wt.access(p) for p in range(1, n + 1)] == seq
    assert wt.to_list() == seq
    assert sum(wt.rank(n, c) for c in range(sigma)) == n
    for c in set(seq) | {0, sigma - 1}:
        pos = [p + 1 for p, x in enumerate(seq) if x == c]
        assert [wt.rank(i, c) for i in range(0, n + 1, max(1, n // 17))] == \
            [sum(1 for p in pos if p <= i) for i in range(0, n + 1, max(1, n // 17))]
        assert [wt.select(j, c) for j in range(1, len(pos) + 1)] == pos
    # select(rank(p, c), c) == p for the symbol at p
    for p in range(1, n + 1, max(1, n // 23)):
        c = seq[p - 1]
        assert wt.select(wt.rank(p, c), c) == p


@settings(max_examples=80, deadline=None)
@given(sequences(), st.data())
def test_threshold_queries_match_scan(data, draw):
    seq, sigma = data
    wt = WaveletTree(seq, sigma)
    n = len(seq)
    k = draw.draw(st.integers(0, sigma + 2))
    i = draw.draw(st.integers(1, n))
    j = draw.draw(st.integers(1, n))
    lo, hi = min(i, j), max(i, j)
    below = [p + 1 for p, x in enumerate(seq) if x < k]
    assert wt.prev_below(i, k) == max((p for p in below if p <= i), default=None)
    assert wt.next_below(j, k) == min((p for p in below if p >= j), default=None)
    assert wt.range_below(lo, hi, k) == [p for p in below if lo <= p <= hi]


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 10_000), st.integers(2, 64), st.integers(0, 2**32))
def test_wt_space_bound(n, sigma, seed):
    seq = np.random.default_rng(seed).integers(0, sigma, size=n)
    wt = WaveletTree(seq, sigma)
    raw = n * math.ceil(math.log2(sigma))
    # small sequences are dominated by fixed per-level overhead
    if n >= 4096:
        assert wt.size_in_bits <= 1.5 * raw
