import pytest

from catalog import four_four_fraction, oa9_components, oa18, gf3_fraction


@pytest.fixture(scope="session")
def gf3():
    return gf3_fraction()


@pytest.fixture(scope="session")
def four4():
    return four_four_fraction()


@pytest.fixture(scope="session")
def eighteen():
    return oa18()


@pytest.fixture(scope="session")
def components():
    return oa9_components()
