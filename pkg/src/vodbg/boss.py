"""BOSS de Bruijn graph: construction from reads and order-K navigation.

Rows of the edge matrix are (K+1)-tuples: the first K symbols are the
source node's label, the last symbol is the edge label.  Symbols are
stored as alphabet codes with ``$`` = 0, so numeric order is rank order.
"""
from __future__ import annotations

import logging
from bisect import bisect_left
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .alphabet import DNA, SENTINEL, Alphabet
from .errors import AlphabetError, ConstructionError, HandleError, InputError
from .succinct import BitVector, WaveletTree

log = logging.getLogger(__name__)

MAX_K = 1 << 16


class NodeHandle(NamedTuple):
    """Node of the order-``k`` graph: the row interval ``[i, j]`` (1-based,
    inclusive) whose sources share a length-``k`` suffix."""

    i: int
    j: int
    k: int

    def __str__(self) -> str:
        return f"{self.i},{self.j},{self.k}"

    @classmethod
    def parse(cls, text: str) -> "NodeHandle":
        try:
            i, j, k = (int(x) for x in text.split(","))
        except ValueError:
            raise HandleError(f"node must be written i,j,k, got {text!r}") from None
        return cls(i, j, k)


# -- k-mer extraction --------------------------------------------------------

def kmer_windows(reads: Iterable[str], width: int, alphabet: Alphabet = DNA,
                 revcomp: bool = False) -> np.ndarray:
    """All length-``width`` windows of the reads as an (m, width) code array.
    Duplicates are kept; reads shorter than ``width`` contribute nothing."""
    if width < 1:
        raise ValueError("window width must be positive")
    comp = alphabet.complement_codes() if revcomp else None
    chunks = []
    for idx, read in enumerate(reads):
        codes = alphabet.encode_read(read, idx)
        if codes.size < width:
            continue
        chunks.append(np.lib.stride_tricks.sliding_window_view(codes, width))
        if comp is not None:
            rc = comp[codes[::-1]]
            chunks.append(np.lib.stride_tricks.sliding_window_view(rc, width))
    if not chunks:
        return np.zeros((0, width), dtype=np.uint8)
    return np.ascontiguousarray(np.concatenate(chunks))


def extract_edges(reads: Iterable[str], K: int, revcomp: bool = False,
                  alphabet: Alphabet = DNA) -> set[str]:
    """Distinct (K+1)-mers of the reads (and of their reverse complements)."""
    if K < 1:
        raise ValueError("K must be at least 1")
    arr = kmer_windows(reads, K + 1, alphabet, revcomp)
    return {alphabet.decode(row) for row in np.unique(arr, axis=0)}


def _encode_rows(rows, alphabet: Alphabet) -> np.ndarray:
    texts = [r if isinstance(r, str) else "".join(r) for r in rows]
    if not texts:
        raise InputError("no (K+1)-mers given")
    width = len(texts[0])
    if any(len(t) != width for t in texts):
        raise InputError("all (K+1)-tuples must have the same length")
    if width < 2:
        raise InputError("(K+1)-tuples need K >= 1")
    try:
        return np.stack([alphabet.encode(t) for t in texts])
    except AlphabetError as exc:
        raise InputError(str(exc)) from None


# -- dummy closure and colex sort --------------------------------------------

def _row_keys(arr: np.ndarray) -> list[bytes]:
    arr = np.ascontiguousarray(arr)
    w = arr.shape[1]
    raw = arr.tobytes()
    return [raw[p:p + w] for p in range(0, len(raw), w)]


def _closure_gaps(codes: np.ndarray):
    """Sources lacking an incoming edge, $-free targets lacking an outgoing
    row, and the set of all edge targets."""
    K = codes.shape[1] - 1
    srcs = set(_row_keys(codes[:, :K]))
    real = codes[codes[:, K] != 0]
    tgts = set(_row_keys(real[:, 1:]))
    no_in = srcs - tgts
    no_in.discard(bytes(K))
    no_out = {t for t in tgts if 0 not in t} - srcs
    return no_in, no_out, tgts


def close_under_dummies(codes: np.ndarray) -> np.ndarray:
    """Append the dummy rows needed so every source has an incoming edge and
    every $-free target has an outgoing row.  Input may hold duplicates."""
    if codes.ndim != 2 or codes.shape[0] == 0:
        raise InputError("no (K+1)-mers extracted")
    K = codes.shape[1] - 1
    no_in, no_out, has_in = _closure_gaps(codes)
    extra = set()
    for alpha in no_in:
        # $-prefixed chain ending in alpha, stopping where a chain already exists
        for m in range(1, K + 1):
            src = bytes(m) + alpha[:K - m]
            extra.add(src + alpha[K - m:K - m + 1])
            if src in has_in or m == K:
                break
            has_in.add(src)
    for beta in no_out:
        extra.add(beta + b"\x00")
    if not extra:
        return codes
    dummies = np.frombuffer(b"".join(sorted(extra)), dtype=np.uint8).reshape(-1, K + 1)
    return np.concatenate([codes, dummies])


def colex_order(codes: np.ndarray) -> np.ndarray:
    """LSD radix sort: permutation putting rows in right-to-left order of the
    source, ties broken by the edge label."""
    n, width = codes.shape
    K = width - 1
    perm = np.arange(n)
    # least significant digit first: edge label, then source left to right
    for col in [K, *range(K)]:
        keys = codes[perm, col]
        perm = perm[np.argsort(keys, kind="stable")]
    return perm


def suffix_lcp(codes: np.ndarray) -> np.ndarray:
    """Longest common suffix length of the sources of adjacent rows."""
    K = codes.shape[1] - 1
    if codes.shape[0] < 2:
        return np.zeros(0, dtype=np.int64)
    rev = (codes[:-1, :K] == codes[1:, :K])[:, ::-1]
    lcs = np.argmin(rev, axis=1).astype(np.int64)
    lcs[rev.all(axis=1)] = K
    return lcs


class EdgeMatrix:
    """Colex-sorted, duplicate-free (K+1)-tuples including dummies."""

    def __init__(self, codes: np.ndarray, alphabet: Alphabet = DNA):
        codes = np.ascontiguousarray(codes, dtype=np.uint8)
        if codes.ndim != 2 or codes.shape[1] < 2:
            raise ConstructionError("edge matrix needs K >= 1 and 2-D shape")
        self.codes = codes
        self.alphabet = alphabet
        self.K = codes.shape[1] - 1

    @classmethod
    def from_edges(cls, edges, K: int, alphabet: Alphabet = DNA) -> "EdgeMatrix":
        """Dummy-close, sort and deduplicate a (K+1)-mer array or string set."""
        if isinstance(edges, np.ndarray):
            codes = edges
        else:
            edges = list(edges)
            if not edges:
                raise InputError("no (K+1)-mers extracted")
            codes = _encode_rows(edges, alphabet)
        if codes.shape[0] == 0:
            raise InputError("no (K+1)-mers extracted")
        if codes.shape[1] != K + 1:
            raise InputError(f"expected {K + 1}-mers, got width {codes.shape[1]}")
        if (codes[:, :K] == 0).any() or (codes[:, K] == 0).any():
            raise InputError("input (K+1)-mers must not contain '$'")
        return sort_rows(close_under_dummies(codes), alphabet)

    @classmethod
    def from_reads(cls, reads: Iterable[str], K: int, revcomp: bool = False,
                   alphabet: Alphabet = DNA) -> "EdgeMatrix":
        if not 1 <= K <= MAX_K:
            raise InputError(f"K must lie in 1..{MAX_K}")
        return cls.from_edges(kmer_windows(reads, K + 1, alphabet, revcomp), K, alphabet)

    def __len__(self) -> int:
        return self.codes.shape[0]

    @property
    def n_rows(self) -> int:
        return self.codes.shape[0]

    def source(self, r: int) -> str:
        """Source label of 1-based row r."""
        return self.alphabet.decode(self.codes[r - 1, : self.K])

    def label(self, r: int) -> str:
        return self.alphabet.chars[self.codes[r - 1, self.K]]

    @property
    def rows(self) -> list[tuple[str, str]]:
        chars = self.alphabet.chars
        return [(self.alphabet.decode(row[:-1]), chars[row[-1]]) for row in self.codes]

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self.rows)

    def lcs(self) -> np.ndarray:
        return suffix_lcp(self.codes)

    def validate(self) -> None:
        """Raise ConstructionError unless rows are strictly colex-sorted and
        closed under the dummy rules."""
        codes = self.codes
        K = self.K
        if codes.shape[0] == 0:
            raise ConstructionError("edge matrix is empty")
        if codes.max(initial=0) > self.alphabet.sigma:
            raise ConstructionError("edge matrix holds codes outside the alphabet")
        if codes.shape[0] > 1:
            keyed = codes[:, [*range(K - 1, -1, -1), K]]
            diff = keyed[1:] != keyed[:-1]
            if not diff.any(axis=1).all():
                raise ConstructionError("edge matrix has duplicate rows")
            first = np.argmax(diff, axis=1)
            idx = np.arange(first.size)
            if not (keyed[1:][idx, first] > keyed[:-1][idx, first]).all():
                raise ConstructionError("edge matrix rows are not in colex order")
        no_in, no_out, _ = _closure_gaps(codes)
        if no_in or no_out:
            raise ConstructionError(
                f"edge matrix is not dummy-closed: {len(no_in)} sources without "
                f"incoming edge, {len(no_out)} targets without outgoing row")


def sort_rows(codes: np.ndarray, alphabet: Alphabet = DNA) -> EdgeMatrix:
    codes = codes[colex_order(codes)]
    if codes.shape[0] > 1:
        keep = np.ones(codes.shape[0], dtype=bool)
        keep[1:] = (codes[1:] != codes[:-1]).any(axis=1)
        codes = codes[keep]
    return EdgeMatrix(codes, alphabet)


def add_dummies(edges, K: int, alphabet: Alphabet = DNA) -> list[tuple[str, str]]:
    """Input edges plus dummy rows, as unsorted (source, label) pairs."""
    codes = edges if isinstance(edges, np.ndarray) else _encode_rows(list(edges), alphabet)
    if codes.shape[1] != K + 1:
        raise InputError(f"expected {K + 1}-mers, got width {codes.shape[1]}")
    closed = np.unique(close_under_dummies(codes), axis=0)
    chars = alphabet.chars
    return [(alphabet.decode(row[:-1]), chars[row[-1]]) for row in closed]


def sort_edges(rows, alphabet: Alphabet = DNA) -> EdgeMatrix:
    """Colex-sort (source, label) pairs or (K+1)-strings into an EdgeMatrix."""
    return sort_rows(_encode_rows(list(rows), alphabet), alphabet)


# -- the index -----------------------------------------------------------------

class BossIndex:
    """Succinct order-K de Bruijn graph.

    ``W`` is a wavelet tree over edge codes in which a flagged edge (one whose
    label and target repeat an earlier row of the same (K-1)-suffix group)
    uses code ``label + sigma + 1``; ``flags`` carries the same bit on its own.
    """

    def __init__(self, K: int, alphabet: Alphabet, labels: np.ndarray,
                 flags: np.ndarray, last: np.ndarray, C: np.ndarray):
        labels = np.asarray(labels, dtype=np.int64)
        flags = np.asarray(flags, dtype=bool)
        last = np.asarray(last, dtype=bool)
        n = labels.size
        if n == 0:
            raise ConstructionError("index needs at least one row")
        if flags.size != n or last.size != n:
            raise ConstructionError("W, flags and L lengths differ")
        if not last[-1]:
            raise ConstructionError("last row must close a node interval")
        if not 1 <= K <= MAX_K:
            raise ConstructionError(f"K must lie in 1..{MAX_K}")
        if labels.min() < 0 or labels.max() > alphabet.sigma:
            raise ConstructionError("edge labels outside the alphabet")
        self.K = int(K)
        self.alphabet = alphabet
        self.sigma = alphabet.sigma
        self.n_rows = int(n)
        self._nsym = alphabet.sigma + 1
        self.W = WaveletTree(labels + flags * self._nsym, 2 * self._nsym)
        self.flags = BitVector(flags)
        self.L = BitVector(last)
        self.C = np.asarray(C, dtype=np.int64)
        if self.C.size != self._nsym + 1 or self.C[0] != 0 or self.C[-1] != n \
                or (np.diff(self.C) < 0).any():
            raise ConstructionError("C must be nondecreasing from 0 to n_rows")
        self.n_nodes = self.L.count(1)
        self._C = [int(c) for c in self.C]
        # nodes whose label ends in a symbol ranked below c
        self._node_base = [self.L._rank1(c) for c in self._C]
        self._code = alphabet.code
        self._chars = alphabet.chars

    @classmethod
    def build(cls, matrix: EdgeMatrix) -> "BossIndex":
        matrix.validate()
        codes = matrix.codes
        K = matrix.K
        nsym = matrix.alphabet.sigma + 1
        lab = codes[:, K].astype(np.int64)
        lcs = matrix.lcs()
        last = np.ones(len(matrix), dtype=bool)
        last[:-1] = lcs < K
        group = np.concatenate([[0], np.cumsum(lcs < K - 1)])
        _, first = np.unique(group * nsym + lab, return_index=True)
        flags = np.ones(len(matrix), dtype=bool)
        flags[first] = False
        flags[lab == 0] = False
        counts = np.bincount(codes[:, K - 1], minlength=nsym)
        C = np.concatenate([[0], np.cumsum(counts)])
        return cls(K, matrix.alphabet, lab, flags, last, C)

    # -- views ------------------------------------------------------------

    def labels(self) -> np.ndarray:
        """Edge label codes (flags dropped)."""
        return self.W.to_numpy() % self._nsym

    def edge_labels(self) -> str:
        """W as a string, flags dropped."""
        return self.alphabet.decode(self.labels())

    def w_rank(self, i: int, a: str) -> int:
        """Occurrences of label ``a`` (flagged or not) in rows 1..i."""
        c = self._symbol(a)
        return self.W.rank(i, c) + self.W.rank(i, c + self._nsym)

    def nodes(self) -> Iterator[NodeHandle]:
        ends = np.flatnonzero(self.L.to_numpy()) + 1
        start = 1
        for j in ends.tolist():
            yield NodeHandle(start, j, self.K)
            start = j + 1

    def _symbol(self, a: str) -> int:
        try:
            return self._code[a]
        except KeyError:
            raise AlphabetError(f"symbol {a!r} not in {self._chars!r}") from None

    # -- row and interval helpers --------------------------------------------

    def _interval_of(self, idx: int) -> tuple[int, int]:
        """Row interval of the idx-th node (both 1-based)."""
        L = self.L
        i = L._sel1(idx - 1) + 2 if idx > 1 else 1
        return i, L._sel1(idx) + 1

    def _row_interval(self, r: int) -> tuple[int, int]:
        L = self.L
        before = L._rank1(r - 1)
        i = L._sel1(before) + 2 if before else 1
        return i, L._sel1(before + 1) + 1

    def _edge_row(self, i: int, j: int, c: int) -> int | None:
        """Smallest row in [i, j] whose label is code c, flagged or not."""
        W = self.W
        best = None
        for code in (c, c + self._nsym):
            before = W._rank(i - 1, code)
            if W._rank(j, code) > before:
                r = W._select(before + 1, code) + 1
                if best is None or r < best:
                    best = r
        return best

    def _forward_row(self, r: int, c: int) -> tuple[int, int]:
        # a flagged edge shares its target with the unflagged c just before it
        t = self.W._rank(r, c)
        return self._interval_of(self._node_base[c] + t)

    def _lastchar_code(self, r: int) -> int:
        # rows C[c]+1 .. C[c+1] have sources ending in symbol c
        return bisect_left(self._C, r) - 1

    def _predecessor_rows(self, r: int, first_only: bool = False) -> list[int]:
        """Rows of the edges entering the order-K node that contains row r."""
        c = self._lastchar_code(r)
        if c == 0:
            return []
        t = self.L._rank1(r - 1) + 1 - self._node_base[c]
        W = self.W
        first = W._select(t, c)
        if first_only:
            return [first + 1]
        rows = [first + 1]
        cm = c + self._nsym
        end = W._select(t + 1, c) if t < W._rank(self.n_rows, c) else self.n_rows
        lo, hi = W._rank(first, cm), W._rank(end, cm)
        rows.extend(W._select(x, cm) + 1 for x in range(lo + 1, hi + 1))
        return rows

    def _suffix(self, r: int, length: int) -> str:
        """Last ``length`` symbols of the label of the order-K node holding row r."""
        out = []
        chars = self._chars
        for step in range(length):
            c = self._lastchar_code(r)
            if c == 0:
                out.append(SENTINEL * (length - step))
                break
            out.append(chars[c])
            if step + 1 < length:
                (r,) = self._predecessor_rows(r, first_only=True)
        return "".join(reversed(out))

    def _check(self, v: NodeHandle) -> None:
        i, j, k = v
        if k != self.K:
            raise HandleError(f"BOSS operations need an order-{self.K} node, got order {k}")
        if not 1 <= i <= j <= self.n_rows:
            raise HandleError(f"interval [{i}, {j}] outside rows 1..{self.n_rows}")
        L = self.L
        if (i > 1 and not L._get(i - 2)) or not L._get(j - 1) \
                or L._rank1(j - 1) != L._rank1(i - 1):
            raise HandleError(f"[{i}, {j}] is not a node interval of the order-{k} graph")

    # -- navigation -------------------------------------------------------

    def node_from_row(self, r: int) -> NodeHandle:
        if not 1 <= r <= self.n_rows:
            raise IndexError(f"row {r} outside 1..{self.n_rows}")
        return NodeHandle(*self._row_interval(r), self.K)

    def forward(self, v: NodeHandle, a: str) -> NodeHandle | None:
        self._check(v)
        c = self._symbol(a)
        if c == 0:
            return None
        r = self._edge_row(v.i, v.j, c)
        if r is None:
            return None
        return NodeHandle(*self._forward_row(r, c), self.K)

    def backward(self, v: NodeHandle) -> list[NodeHandle]:
        self._check(v)
        return [NodeHandle(*self._row_interval(r), self.K)
                for r in self._predecessor_rows(v.i)]

    def lastchar(self, v: NodeHandle) -> str:
        self._check(v)
        return self._chars[self._lastchar_code(v.i)]

    def label(self, v: NodeHandle) -> str:
        self._check(v)
        return self._suffix(v.i, self.K)

    def graph_stats(self) -> dict:
        bits = {
            "W": self.W.size_in_bits,
            "L": self.L.size_in_bits,
            "flags": self.flags.size_in_bits,
            "C": 64 * self.C.size,
        }
        bits["total"] = sum(bits.values())
        return {"n_rows": self.n_rows, "n_nodes": self.n_nodes, "K": self.K,
                "sigma": self.sigma, "bits": bits}
