from __future__ import annotations

import pytest

from vodbg.boss import BossIndex, EdgeMatrix, NodeHandle
from vodbg.varorder import VarOrderIndex

TOY_EDGES = ["CGAC", "GACG", "GACT", "TACG", "GTCG", "ACGA", "ACGT", "TCGA", "CGTC"]
TOY_SOURCES = ["$$$", "CGA", "$TA", "GAC", "GAC", "TAC", "GTC", "ACG", "ACG", "TCG",
                "$$T", "ACT", "CGT"]
TOY_W = "TCCGTGGATAA$C"
TOY_L = "1110111011111"
TOY_LSTAR = [0, 1, 0, 3, 2, 1, 0, 3, 2, 0, 1, 1]
TOY_NODES = [(1, 1), (2, 2), (3, 3), (4, 5), (6, 6), (7, 7), (8, 9), (10, 10), (11, 11),
              (12, 12), (13, 13)]
TOY_LABELS = ["$$$", "CGA", "$TA", "GAC", "TAC", "GTC", "ACG", "TCG", "$$T", "ACT", "CGT"]
TOY_ORDER2 = [((1, 1), "$$"), ((2, 2), "GA"), ((3, 3), "TA"), ((4, 6), "AC"),
               ((7, 7), "TC"), ((8, 10), "CG"), ((11, 11), "$T"), ((12, 12), "CT"),
               ((13, 13), "GT")]
TOY_ORDER1 = [((1, 1), "$"), ((2, 3), "A"), ((4, 7), "C"), ((8, 10), "G"), ((11, 13), "T")]

# accumulated by the acceptance suite, printed at the end of the run
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def H(i, j, k):
    return NodeHandle(i, j, k)


@pytest.fixture(scope="session")
def toy_matrix() -> EdgeMatrix:
    return EdgeMatrix.from_edges(TOY_EDGES, 3)


@pytest.fixture(scope="session")
def toy_boss(toy_matrix) -> BossIndex:
    return BossIndex.build(toy_matrix)


@pytest.fixture(scope="session")
def toy(toy_matrix) -> VarOrderIndex:
    return VarOrderIndex.build(toy_matrix)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
