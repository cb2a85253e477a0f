import pytest

from xiconst.stieltjes import stieltjes_table


@pytest.fixture(scope="session")
def gammas128():
    return stieltjes_table(40, 128)


@pytest.fixture(scope="session")
def gammas256():
    return stieltjes_table(64, 256)
