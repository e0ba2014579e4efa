"""Ordered symbol sets with the ``$`` sentinel ranked below every symbol."""
from __future__ import annotations

import numpy as np

from .errors import AlphabetError, InputError

SENTINEL = "$"
_COMPLEMENT = {"A": "T", "C": "G", "G": "C", "T": "A"}
_INVALID = 255


class Alphabet:
    """Symbols of Σ in rank order.  Code 0 is ``$``; ``symbols[i]`` has code i+1."""

    def __init__(self, symbols: str = "ACGT"):
        if not symbols:
            raise AlphabetError("alphabet must not be empty")
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"duplicate symbols in {symbols!r}")
        if SENTINEL in symbols:
            raise AlphabetError("'$' is reserved for dummy padding")
        if any(ord(c) > 127 or c.isspace() for c in symbols):
            raise AlphabetError("symbols must be printable ASCII characters")
        self.symbols = symbols
        self.chars = SENTINEL + symbols
        self.sigma = len(symbols)
        self.code = {c: i for i, c in enumerate(self.chars)}
        self._table = np.full(256, _INVALID, dtype=np.uint8)
        for c in symbols:
            self._table[ord(c)] = self.code[c]
        self._decode = np.frombuffer(self.chars.encode("ascii"), dtype=np.uint8)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and other.symbols == self.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"Alphabet({self.symbols!r})"

    @property
    def has_complement(self) -> bool:
        return set(self.symbols) == set(_COMPLEMENT)

    def encode_read(self, read: str, index: int = 0) -> np.ndarray:
        """Codes for a read over Σ (no ``$``).  Raises InputError naming the
        read index and 1-based position of the first bad symbol."""
        raw = np.frombuffer(read.encode("latin-1", errors="replace"), dtype=np.uint8)
        codes = self._table[raw]
        bad = np.flatnonzero(codes == _INVALID)
        if bad.size:
            p = int(bad[0])
            raise InputError(f"read {index}: symbol {read[p]!r} at position {p + 1} "
                             f"is not in alphabet {self.symbols!r}")
        return codes

    def encode(self, text: str) -> np.ndarray:
        """Codes for a string that may contain ``$``."""
        try:
            return np.array([self.code[c] for c in text], dtype=np.uint8)
        except KeyError as exc:
            raise AlphabetError(f"symbol {exc.args[0]!r} not in {self.chars!r}") from None

    def decode(self, codes) -> str:
        return self._decode[np.asarray(codes, dtype=np.uint8)].tobytes().decode("ascii")

    def reverse_complement(self, read: str) -> str:
        if not self.has_complement:
            raise AlphabetError("reverse complements need the DNA alphabet ACGT")
        return "".join(_COMPLEMENT[c] for c in reversed(read))

    def complement_codes(self) -> np.ndarray:
        """Lookup table mapping each code to its complement's code."""
        if not self.has_complement:
            raise AlphabetError("reverse complements need the DNA alphabet ACGT")
        table = np.arange(self.sigma + 1, dtype=np.uint8)
        for c, d in _COMPLEMENT.items():
            table[self.code[c]] = self.code[d]
        return table


DNA = Alphabet("ACGT")
