from __future__ import annotations

import io

import pytest

from vodbg import storage
from vodbg.boss import EdgeMatrix
from vodbg.errors import CorruptionError, FormatError, VersionError
from vodbg.synthetic import random_corpus
from vodbg.varorder import VarOrderIndex

from conftest import H


def _all_answers(vi):
    out = []
    for k in range(vi.K + 1):
        for v in vi.nodes(k):
            out.append((v, vi.label(v), vi.lastchar(v), vi.backward(v),
                        [vi.forward(v, a) for a in "$ACGT"] if k else None,
                        [vi.maxlen(v, a) for a in "*ACGT"],
                        vi.longer(v, vi.K), vi.shorter(v, k // 2)))
    return out


def test_header(toy):
    data = storage.to_bytes(toy)
    assert data[:5] == b"VODBG" and data[5] == 1
    assert int.from_bytes(data[6:14], "little") == 3
    assert int.from_bytes(data[14:22], "little") == 4
    assert int.from_bytes(data[22:30], "little") == 13
    assert int.from_bytes(data[30:38], "little") == 11
    assert data[38:42] == b"ACGT"


def test_save_is_deterministic(toy):
    a, b = io.BytesIO(), io.BytesIO()
    assert storage.save(toy, a) == storage.save(toy, b) == len(a.getvalue())
    assert a.getvalue() == b.getvalue()


def test_toy_round_trip(toy, tmp_path):
    path = tmp_path / "toy.vdbg"
    storage.write_index(toy, path)
    back = storage.read_index(path)
    assert back.graph_stats() == toy.graph_stats()
    assert back.forward(H(8, 9, 3), "A") == H(2, 2, 3)
    assert _all_answers(back) == _all_answers(toy)
    assert storage.to_bytes(back) == path.read_bytes()
    assert all(back.validate_handle(v) for v in back.nodes(3))


@pytest.mark.parametrize("seed", range(20))
def test_random_round_trip(seed):
    c = random_corpus(1000 + seed)
    vi = VarOrderIndex.build(EdgeMatrix.from_reads(c.reads, c.K, c.revcomp))
    data = storage.to_bytes(vi)
    back = storage.from_bytes(data)
    assert storage.to_bytes(back) == data
    assert back.lstar_values().tolist() == vi.lstar_values().tolist()
    assert back.boss.labels().tolist() == vi.boss.labels().tolist()
    assert str(back.boss.flags) == str(vi.boss.flags)
    if seed < 5:
        assert _all_answers(back) == _all_answers(vi)


def test_bad_magic():
    with pytest.raises(FormatError, match="magic"):
        storage.from_bytes(b"XXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXX")
    with pytest.raises(FormatError):
        storage.from_bytes(b"")


def test_version_mismatch(toy):
    data = bytearray(storage.to_bytes(toy))
    data[5] = 2
    with pytest.raises(VersionError):
        storage.from_bytes(bytes(data))


def test_every_truncation_is_refused(toy):
    data = storage.to_bytes(toy)
    for cut in range(5, len(data)):
        with pytest.raises(CorruptionError):
            storage.from_bytes(data[:cut])


def test_trailing_bytes(toy):
    with pytest.raises(CorruptionError, match="trailing"):
        storage.from_bytes(storage.to_bytes(toy) + b"\0")


def test_inconsistent_payload(toy):
    data = bytearray(storage.to_bytes(toy))
    data[30] = 12  # header n_nodes
    with pytest.raises(CorruptionError, match="nodes"):
        storage.from_bytes(bytes(data))
