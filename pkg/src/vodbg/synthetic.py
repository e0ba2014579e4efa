"""Random genomes and read sets for tests and benchmarks."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alphabet import DNA, Alphabet


def random_genome(length: int, rng: np.random.Generator, alphabet: Alphabet = DNA) -> str:
    picks = rng.integers(0, alphabet.sigma, size=length)
    return np.frombuffer(alphabet.symbols.encode("ascii"), dtype=np.uint8)[picks] \
        .tobytes().decode("ascii")


def shear(genome: str, read_len: int = 100, step: int = 50) -> list[str]:
    """Tile the genome with overlapping reads; the last read is anchored at the end."""
    if read_len >= len(genome):
        return [genome]
    starts = list(range(0, len(genome) - read_len + 1, step))
    if starts[-1] != len(genome) - read_len:
        starts.append(len(genome) - read_len)
    return [genome[s:s + read_len] for s in starts]


def sample_reads(genome: str, n_reads: int, rng: np.random.Generator,
                 min_len: int = 20, max_len: int = 60) -> list[str]:
    """Reads at uniform random positions with uniform random lengths."""
    out = []
    for _ in range(n_reads):
        length = int(rng.integers(min_len, max_len + 1))
        length = min(length, len(genome))
        start = int(rng.integers(0, len(genome) - length + 1))
        out.append(genome[start:start + length])
    return out


@dataclass
class Corpus:
    seed: int
    K: int
    revcomp: bool
    reads: list[str]


def random_corpus(seed: int) -> Corpus:
    """10-100 reads of length 20-60 sampled from a short random genome, so the
    reads overlap and the graph has real branching.  K is drawn from 4..12."""
    rng = np.random.default_rng(seed)
    K = int(rng.integers(4, 13))
    revcomp = bool(rng.integers(0, 2))
    n_reads = int(rng.integers(10, 101))
    genome = random_genome(int(rng.integers(150, 600)), rng)
    return Corpus(seed, K, revcomp, sample_reads(genome, n_reads, rng))
