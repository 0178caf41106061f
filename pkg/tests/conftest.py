import pytest

from cyclofermat.real_cyclotomic import build_field


@pytest.fixture(scope="session")
def K5():
    return build_field(5)


@pytest.fixture(scope="session")
def K7():
    return build_field(7)


@pytest.fixture(scope="session")
def K11():
    return build_field(11)
