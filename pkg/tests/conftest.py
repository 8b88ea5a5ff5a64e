import pytest

from core.graphs import ROOT, Slot, TreeFrameShape, TreeWiring
from core.ladder import ARROW, Frame, ladder
from oracle.correspondence import four_dim_example, three_dim_example


@pytest.fixture(scope="session")
def face_example():
    """3 元链与 2 元链嫁接成的 3 维开胞形，输出为 4 元链"""
    alpha_1 = ladder.chain_opetope((0, 1, 2))
    alpha_2 = ladder.chain_opetope((1, 0))
    wiring = TreeWiring(
        TreeFrameShape((3, 2), 4),
        (ROOT, Slot(0, 0)),
        (Slot(1, 0), Slot(0, 1), Slot(0, 2), Slot(1, 1)),
    )
    return ladder.graft((alpha_1, alpha_2), wiring)


@pytest.fixture(scope="session")
def corolla_example():
    return three_dim_example()


@pytest.fixture(scope="session")
def four_example():
    return four_dim_example()


@pytest.fixture(scope="session")
def two_opetopes():
    """元数 0..3 的全部 2 维开胞形"""
    return {m: ladder.enumerate_opetopes(2, Frame((ARROW,) * m, ARROW)) for m in range(4)}
