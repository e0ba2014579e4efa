"""Static rank/select bitvectors and wavelet trees.

Positions in the public methods are 1-based and ``rank(i, ...)`` counts
over the first ``i`` positions, so ``rank(0, ...)`` is always 0.  The
``_``-prefixed methods are the 0-based primitives the graph code calls in
its inner loops.

The bitvector keeps its payload as little-endian 64-bit words plus one
absolute 64-bit count per 512-bit block.  Queries run against a mirror of
the payload held as one Python int per block, which lets a rank be a
single masked ``int.bit_count``.

The wavelet tree is stored level by level (the "wavelet matrix" layout):
one bitvector per bit of the symbol code, elements stably partitioned by
that bit before moving to the next level.
"""
from __future__ import annotations

from bisect import bisect_left

import numpy as np

from .errors import AlphabetError, NotFoundError

BLOCK = 512
_FULL = (1 << BLOCK) - 1
_MASKS = [(1 << t) - 1 for t in range(BLOCK + 1)]


def _select_in_block(x: int, j: int) -> int:
    """Offset of the j-th set bit of x (j >= 1, x has at least j set bits)."""
    lo, hi = 1, x.bit_length()
    masks = _MASKS
    while lo < hi:
        mid = (lo + hi) >> 1
        if (x & masks[mid]).bit_count() >= j:
            hi = mid
        else:
            lo = mid + 1
    return lo - 1


def _as_bits(bits) -> np.ndarray:
    if isinstance(bits, str):
        arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
        if arr.size and arr.max() > 1:
            raise ValueError("bit string may only contain '0' and '1'")
        return arr.astype(bool)
    arr = np.asarray(bits)
    if arr.dtype != bool:
        if arr.size and (arr.min() < 0 or arr.max() > 1):
            raise ValueError("bits must be 0 or 1")
        arr = arr.astype(bool)
    return arr.ravel()


class BitVector:
    """Immutable bit sequence with rank and select."""

    def __init__(self, bits):
        bits = _as_bits(bits)
        n = int(bits.size)
        nblocks = -(-n // BLOCK)
        buf = np.zeros(nblocks * (BLOCK // 8), dtype=np.uint8)
        packed = np.packbits(bits, bitorder="little")
        buf[: packed.size] = packed
        self.n = n
        # payload trimmed to whole words; block padding lives only in buf
        self.words = buf[: -(-n // 64) * 8].view("<u8").copy()
        per_block = bits_per_block(bits, nblocks)
        self.block_rank = np.zeros(nblocks + 1, dtype=np.uint64)
        np.cumsum(per_block, out=self.block_rank[1:])

        raw = buf.tobytes()
        step = BLOCK // 8
        self._blocks = [int.from_bytes(raw[b * step:(b + 1) * step], "little")
                        for b in range(nblocks)]
        self._blocks.append(0)
        self._cum1 = [int(c) for c in self.block_rank]
        # zeros before each block start; derived, not stored
        self._cum0 = [b * BLOCK - c for b, c in enumerate(self._cum1)]
        self.ones = self._cum1[-1]

    # -- 0-based primitives -------------------------------------------------

    def _get(self, q: int) -> int:
        return (self._blocks[q >> 9] >> (q & 511)) & 1

    def _rank1(self, i: int) -> int:
        return self._cum1[i >> 9] + (self._blocks[i >> 9] & _MASKS[i & 511]).bit_count()

    def _rank0(self, i: int) -> int:
        return i - self._cum1[i >> 9] - (self._blocks[i >> 9] & _MASKS[i & 511]).bit_count()

    def _sel1(self, j: int) -> int:
        b = bisect_left(self._cum1, j) - 1
        return (b << 9) + _select_in_block(self._blocks[b], j - self._cum1[b])

    def _sel0(self, j: int) -> int:
        b = bisect_left(self._cum0, j) - 1
        return (b << 9) + _select_in_block(~self._blocks[b] & _FULL, j - self._cum0[b])

    # -- public API ---------------------------------------------------------

    def __len__(self) -> int:
        return self.n

    def count(self, bit: int = 1) -> int:
        return self.ones if bit else self.n - self.ones

    def access(self, p: int) -> int:
        if not 1 <= p <= self.n:
            raise IndexError(f"position {p} outside 1..{self.n}")
        return self._get(p - 1)

    def rank(self, i: int, bit: int = 1) -> int:
        if not 0 <= i <= self.n:
            raise IndexError(f"rank prefix {i} outside 0..{self.n}")
        r = self._rank1(i)
        return r if bit else i - r

    def select(self, j: int, bit: int = 1) -> int:
        if not 1 <= j <= self.count(bit):
            raise NotFoundError(f"no {bit}-bit number {j} (have {self.count(bit)})")
        return (self._sel1(j) if bit else self._sel0(j)) + 1

    def to_numpy(self) -> np.ndarray:
        return np.unpackbits(self.words.view(np.uint8), bitorder="little")[: self.n].astype(bool)

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.to_numpy())

    def __repr__(self) -> str:
        return f"BitVector(n={self.n}, ones={self.ones})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.words, other.words)

    __hash__ = None

    @property
    def size_in_bits(self) -> int:
        return 64 * (self.words.size + self.block_rank.size)


def bits_per_block(bits: np.ndarray, nblocks: int) -> np.ndarray:
    padded = np.zeros(nblocks * BLOCK, dtype=np.uint16)
    padded[: bits.size] = bits
    return padded.reshape(nblocks, BLOCK).sum(axis=1, dtype=np.uint64)


class WaveletTree:
    """Sequence over ``{0..sigma-1}`` with access, rank, select and
    threshold queries (positions holding a value below ``k``)."""

    def __init__(self, symbols, sigma: int | None = None):
        seq = np.asarray(symbols, dtype=np.int64).ravel()
        if sigma is None:
            sigma = int(seq.max()) + 1 if seq.size else 1
        if sigma < 1:
            raise AlphabetError("alphabet must have at least one symbol")
        if seq.size and (seq.min() < 0 or seq.max() >= sigma):
            raise AlphabetError(f"symbols must lie in 0..{sigma - 1}")
        self.n = int(seq.size)
        self.sigma = int(sigma)
        self.levels = max(1, (sigma - 1).bit_length())
        self._bv: list[BitVector] = []
        self._zeros: list[int] = []
        cur = seq
        for lvl in range(self.levels):
            bits = (cur >> (self.levels - 1 - lvl)) & 1
            bv = BitVector(bits.astype(bool))
            self._bv.append(bv)
            self._zeros.append(bv.count(0))
            cur = np.concatenate([cur[bits == 0], cur[bits == 1]])

    def __len__(self) -> int:
        return self.n

    @property
    def size_in_bits(self) -> int:
        return sum(bv.size_in_bits for bv in self._bv) + 64 * len(self._zeros)

    def _check_symbol(self, c: int) -> None:
        if not 0 <= c < self.sigma:
            raise AlphabetError(f"symbol {c} outside 0..{self.sigma - 1}")

    # -- 0-based primitives -------------------------------------------------

    def _access(self, q: int) -> int:
        val = 0
        for bv, z in zip(self._bv, self._zeros):
            b = bv._get(q)
            val = (val << 1) | b
            q = z + bv._rank1(q) if b else bv._rank0(q)
        return val

    def _rank(self, i: int, c: int) -> int:
        s, e = 0, i
        shift = self.levels
        for bv, z in zip(self._bv, self._zeros):
            shift -= 1
            if (c >> shift) & 1:
                s, e = z + bv._rank1(s), z + bv._rank1(e)
            else:
                s, e = bv._rank0(s), bv._rank0(e)
        return e - s

    def _select(self, j: int, c: int) -> int:
        s = 0
        shift = self.levels
        for bv, z in zip(self._bv, self._zeros):
            shift -= 1
            s = z + bv._rank1(s) if (c >> shift) & 1 else bv._rank0(s)
        p = s + j - 1
        for lvl in range(self.levels - 1, -1, -1):
            bv = self._bv[lvl]
            if (c >> (self.levels - 1 - lvl)) & 1:
                p = bv._sel1(p - self._zeros[lvl] + 1)
            else:
                p = bv._sel0(p + 1)
        return p

    def _prev(self, lvl: int, s: int, q: int, k: int):
        # largest position in [s, q) of this level's node holding a value < k
        if q <= s or lvl == self.levels:
            return None
        bv = self._bv[lvl]
        if (k >> (self.levels - 1 - lvl)) & 1:
            best = None
            z_q = bv._rank0(q)
            if z_q > bv._rank0(s):
                best = bv._sel0(z_q)
                if best == q - 1:
                    return best
            z = self._zeros[lvl]
            r = self._prev(lvl + 1, z + bv._rank1(s), z + bv._rank1(q), k)
            if r is not None:
                x = bv._sel1(r - z + 1)
                if best is None or x > best:
                    best = x
            return best
        r = self._prev(lvl + 1, bv._rank0(s), bv._rank0(q), k)
        return None if r is None else bv._sel0(r + 1)

    def _next(self, lvl: int, q: int, e: int, k: int):
        # smallest position in [q, e) of this level's node holding a value < k
        if q >= e or lvl == self.levels:
            return None
        bv = self._bv[lvl]
        if (k >> (self.levels - 1 - lvl)) & 1:
            best = None
            z_q = bv._rank0(q)
            if bv._rank0(e) > z_q:
                best = bv._sel0(z_q + 1)
                if best == q:
                    return best
            z = self._zeros[lvl]
            r = self._next(lvl + 1, z + bv._rank1(q), z + bv._rank1(e), k)
            if r is not None:
                x = bv._sel1(r - z + 1)
                if best is None or x < best:
                    best = x
            return best
        r = self._next(lvl + 1, bv._rank0(q), bv._rank0(e), k)
        return None if r is None else bv._sel0(r + 1)

    def _collect(self, lvl: int, s: int, e: int, k: int) -> list[int]:
        # every position in [s, e) of this level's node holding a value < k
        if s >= e or lvl == self.levels:
            return []
        bv = self._bv[lvl]
        if (k >> (self.levels - 1 - lvl)) & 1:
            below = [bv._sel0(t) for t in range(bv._rank0(s) + 1, bv._rank0(e) + 1)]
            z = self._zeros[lvl]
            rest = self._collect(lvl + 1, z + bv._rank1(s), z + bv._rank1(e), k)
            if rest:
                below.extend(bv._sel1(r - z + 1) for r in rest)
                below.sort()
            return below
        rest = self._collect(lvl + 1, bv._rank0(s), bv._rank0(e), k)
        return [bv._sel0(r + 1) for r in rest]

    # -- public API ---------------------------------------------------------

    def access(self, p: int) -> int:
        if not 1 <= p <= self.n:
            raise IndexError(f"position {p} outside 1..{self.n}")
        return self._access(p - 1)

    def rank(self, i: int, c: int) -> int:
        self._check_symbol(c)
        if not 0 <= i <= self.n:
            raise IndexError(f"rank prefix {i} outside 0..{self.n}")
        return self._rank(i, c)

    def select(self, j: int, c: int) -> int:
        self._check_symbol(c)
        total = self._rank(self.n, c)
        if not 1 <= j <= total:
            raise NotFoundError(f"no occurrence {j} of symbol {c} (have {total})")
        return self._select(j, c) + 1

    def prev_below(self, i: int, k: int) -> int | None:
        """Largest p <= i with value < k, or None."""
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} outside 1..{self.n}")
        if k <= 0:
            return None
        if k >= 1 << self.levels:
            return i
        r = self._prev(0, 0, i, k)
        return None if r is None else r + 1

    def next_below(self, j: int, k: int) -> int | None:
        """Smallest p >= j with value < k, or None."""
        if not 1 <= j <= self.n:
            raise IndexError(f"position {j} outside 1..{self.n}")
        if k <= 0:
            return None
        if k >= 1 << self.levels:
            return j
        r = self._next(0, j - 1, self.n, k)
        return None if r is None else r + 1

    def range_below(self, lo: int, hi: int, k: int) -> list[int]:
        """Ascending positions p in [lo, hi] with value < k."""
        if lo > hi:
            return []
        if lo < 1 or hi > self.n:
            raise IndexError(f"range [{lo}, {hi}] outside 1..{self.n}")
        if k <= 0:
            return []
        if k >= 1 << self.levels:
            return list(range(lo, hi + 1))
        return [p + 1 for p in self._collect(0, lo - 1, hi, k)]

    def to_numpy(self) -> np.ndarray:
        """Decode the whole sequence, all levels at once."""
        q = np.arange(self.n)
        val = np.zeros(self.n, dtype=np.int64)
        for bv, z in zip(self._bv, self._zeros):
            bits = bv.to_numpy()
            ones_before = np.concatenate([[0], np.cumsum(bits)])
            b = bits[q]
            val = (val << 1) | b
            q = np.where(b, z + ones_before[q], q - ones_before[q])
        return val

    def to_list(self) -> list[int]:
        return self.to_numpy().tolist()

    def __repr__(self) -> str:
        return f"WaveletTree(n={self.n}, sigma={self.sigma})"
