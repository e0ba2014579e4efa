"""Variable-order de Bruijn graphs on a succinct BOSS index."""
from .alphabet import DNA, Alphabet
from .boss import BossIndex, EdgeMatrix, NodeHandle, add_dummies, extract_edges, sort_edges
from .errors import (AlphabetError, ConstructionError, CorruptionError, FormatError,
                     HandleError, InputError, NotFoundError, OrderError, VersionError,
                     VodbgError)
from .oracle import oracle_build, oracle_compare
from .storage import load, read_index, save, write_index
from .succinct import BitVector, WaveletTree
from .varorder import ANY, VarOrderIndex

__version__ = "0.1.0"


def build_index(reads, K: int, revcomp: bool = False, alphabet: Alphabet = DNA) -> VarOrderIndex:
    """Variable-order index of the (K+1)-mers of ``reads``."""
    return VarOrderIndex.build(EdgeMatrix.from_reads(reads, K, revcomp, alphabet))
