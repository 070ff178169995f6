import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ringelhall.hallnum import build_hall_table  # noqa: E402
from ringelhall.quiver import Quiver  # noqa: E402

A1 = Quiver(1)
A2 = Quiver(2, ((0, 1),))
A3 = Quiver(3, ((0, 1), (1, 2)))
A1A1 = Quiver(2)


@pytest.fixture(scope="session")
def a1_table():
    return build_hall_table(A1, (3,))


@pytest.fixture(scope="session")
def a2_table():
    return build_hall_table(A2, (2, 2))


@pytest.fixture(scope="session")
def a3_small_table():
    return build_hall_table(A3, (1, 1, 1))


@pytest.fixture(scope="session")
def a3_table():
    """Large enough for the Serre relations of A3: weights 2e_i + e_j."""
    return build_hall_table(A3, (2, 2, 2), max_total=3)


@pytest.fixture(scope="session")
def a1a1_table():
    return build_hall_table(A1A1, (1, 1))


@pytest.fixture(scope="session")
def a2_big_table():
    """Total dimension up to 4, for the bialgebra checks."""
    return build_hall_table(A2, (4, 4), max_total=4)
