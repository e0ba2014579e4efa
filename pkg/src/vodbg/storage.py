"""Binary ``.vdbg`` index files.

Layout, all integers little-endian::

    magic      5 bytes  b"VODBG"
    version    u8       1
    K          u64
    sigma      u64      symbols in the alphabet, ``$`` excluded
    n_rows     u64
    n_nodes    u64
    alphabet   sigma bytes, rank order
    sections   L, flags, W, C, L*; each a u64 payload length then the payload

Bit sections hold ``u64 n_bits`` then the bits packed LSB-first.  Integer
sections (W without flags, L*) hold ``u64 count``, ``u8 width`` and the
values packed LSB-first at that width.  C is ``sigma + 2`` u64 values.
Rank/select directories are rebuilt on load.
"""
from __future__ import annotations

import struct
from pathlib import Path
from typing import BinaryIO

import numpy as np

from .alphabet import Alphabet
from .boss import BossIndex
from .errors import AlphabetError, ConstructionError, CorruptionError, FormatError, VersionError
from .succinct import WaveletTree
from .varorder import VarOrderIndex

MAGIC = b"VODBG"
VERSION = 1
SUFFIX = ".vdbg"
_HEADER = struct.Struct("<5sBQQQQ")
_U64 = struct.Struct("<Q")


def _pack_bits(bits: np.ndarray) -> bytes:
    return _U64.pack(bits.size) + np.packbits(bits.astype(bool), bitorder="little").tobytes()


def _pack_ints(values: np.ndarray, width: int) -> bytes:
    values = np.asarray(values, dtype=np.uint64)
    planes = ((values[:, None] >> np.arange(width, dtype=np.uint64)) & 1).astype(bool)
    packed = np.packbits(planes.ravel(), bitorder="little").tobytes()
    return _U64.pack(values.size) + bytes([width]) + packed


def _section(payload: bytes) -> bytes:
    return _U64.pack(len(payload)) + payload


def to_bytes(vi: VarOrderIndex) -> bytes:
    boss = vi.boss
    alphabet = boss.alphabet.symbols.encode("ascii")
    header = _HEADER.pack(MAGIC, VERSION, vi.K, boss.sigma, boss.n_rows, boss.n_nodes)
    parts = [
        header,
        alphabet,
        _section(_pack_bits(boss.L.to_numpy())),
        _section(_pack_bits(boss.flags.to_numpy())),
        _section(_pack_ints(boss.labels(), max(1, boss.sigma.bit_length()))),
        _section(boss.C.astype("<u8").tobytes()),
        _section(_pack_ints(vi.lstar_values(), max(1, vi.K.bit_length()))),
    ]
    return b"".join(parts)


def save(vi: VarOrderIndex, sink: BinaryIO) -> int:
    data = to_bytes(vi)
    sink.write(data)
    return len(data)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int, what: str) -> bytes:
        if size < 0 or self.pos + size > len(self.data):
            raise CorruptionError(f"file truncated while reading {what}")
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def u64(self, what: str) -> int:
        return _U64.unpack(self.take(8, what))[0]

    def section(self, what: str) -> "_Reader":
        return _Reader(self.take(self.u64(what), what))


def _unpack_bits(sec: _Reader, what: str) -> np.ndarray:
    n = sec.u64(what)
    raw = sec.take(-(-n // 8), what)
    if sec.pos != len(sec.data):
        raise CorruptionError(f"{what} section has trailing bytes")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)


def _unpack_ints(sec: _Reader, what: str) -> np.ndarray:
    n = sec.u64(what)
    (width,) = sec.take(1, what)
    if not 1 <= width <= 63:
        raise CorruptionError(f"{what} has invalid value width {width}")
    raw = sec.take(-(-(n * width) // 8), what)
    if sec.pos != len(sec.data):
        raise CorruptionError(f"{what} section has trailing bytes")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[: n * width]
    planes = bits.reshape(n, width).astype(np.int64)
    return (planes << np.arange(width, dtype=np.int64)).sum(axis=1)


def from_bytes(data: bytes) -> VarOrderIndex:
    rd = _Reader(data)
    if len(data) < len(MAGIC) or data[: len(MAGIC)] != MAGIC:
        raise FormatError("not a vodbg index (bad magic)")
    if len(data) < _HEADER.size:
        raise CorruptionError("file truncated inside the header")
    magic, version, K, sigma, n_rows, n_nodes = _HEADER.unpack(rd.take(_HEADER.size, "header"))
    if version != VERSION:
        raise VersionError(f"unsupported format version {version} (expected {VERSION})")
    if sigma > 127 or sigma < 1:
        raise CorruptionError(f"implausible alphabet size {sigma}")
    try:
        alphabet = Alphabet(rd.take(sigma, "alphabet").decode("ascii"))
    except (UnicodeDecodeError, AlphabetError) as exc:
        raise CorruptionError(f"bad alphabet: {exc}") from None
    last = _unpack_bits(rd.section("L"), "L")
    flags = _unpack_bits(rd.section("flags"), "flags")
    labels = _unpack_ints(rd.section("W"), "W")
    c_sec = rd.section("C")
    if len(c_sec.data) != 8 * (sigma + 2):
        raise CorruptionError("C section has the wrong length")
    C = np.frombuffer(c_sec.data, dtype="<u8").astype(np.int64)
    lstar = _unpack_ints(rd.section("L*"), "L*")
    if rd.pos != len(data):
        raise CorruptionError("trailing bytes after the last section")
    if not (last.size == flags.size == labels.size == n_rows) or lstar.size != max(0, n_rows - 1):
        raise CorruptionError("section lengths disagree with n_rows")
    if lstar.size and lstar.max() > K:
        raise CorruptionError("L* holds values above K")
    try:
        boss = BossIndex(K, alphabet, labels, flags, last, C)
        vi = VarOrderIndex(boss, WaveletTree(lstar, K + 1))
    except ConstructionError as exc:
        raise CorruptionError(f"inconsistent index: {exc}") from None
    if boss.n_nodes != n_nodes:
        raise CorruptionError(f"header says {n_nodes} nodes, L has {boss.n_nodes}")
    if not np.array_equal(lstar >= K, ~last[:-1]):
        raise CorruptionError("L* and L disagree on node boundaries")
    return vi


def load(source: BinaryIO) -> VarOrderIndex:
    return from_bytes(source.read())


def write_index(vi: VarOrderIndex, path) -> int:
    with open(path, "wb") as fh:
        return save(vi, fh)


def read_index(path) -> VarOrderIndex:
    return from_bytes(Path(path).read_bytes())
