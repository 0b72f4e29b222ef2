import networkx as nx
import numpy as np
import pytest

from branchwidth.apps.reductions import graphic_arrangement
from branchwidth.arrangement import Arrangement
from branchwidth.field import GF2, FieldSpec
from branchwidth.linalg import Mat


def make_arrangement(rows, sizes, p=2) -> Arrangement:
    return Arrangement.from_matrix(Mat.from_rows(rows, FieldSpec(p)), sizes)


def random_arrangement(seed: int, p: int = 2, r: int = 4, n: int = 5, max_dim: int = 2) -> Arrangement:
    rng = np.random.default_rng(seed)
    sizes = [int(s) for s in rng.integers(1, max_dim + 1, size=n)]
    data = rng.integers(0, p, size=(r, sum(sizes)))
    return Arrangement.from_matrix(Mat(data, FieldSpec(p)), sizes)


@pytest.fixture
def gf2():
    return GF2


@pytest.fixture
def gf3():
    return FieldSpec(3)


@pytest.fixture
def k4_graphic():
    """Cycle matroid of K4 over GF(2), branch-width 2"""
    return graphic_arrangement(nx.complete_graph(4))


@pytest.fixture
def u24():
    """Four generic lines in GF(3)^2, branch-width 2"""
    return make_arrangement([[1, 0, 1, 1], [0, 1, 1, 2]], [1, 1, 1, 1], p=3)


@pytest.fixture
def three_lines():
    """e1, e2, e1 + e2 in GF(2)^2, branch-width 1"""
    return make_arrangement([[1, 0, 1], [0, 1, 1]], [1, 1, 1])


@pytest.fixture
def independent_lines():
    return make_arrangement(np.eye(4, dtype=int).tolist(), [1, 1, 1, 1])
