import pytest

from ffql.families import shared_cache
from ffql.places import base_field


@pytest.fixture(scope="session")
def b2():
    return base_field(2)


@pytest.fixture(scope="session")
def b3():
    return base_field(3)


@pytest.fixture(scope="session")
def b5():
    return base_field(5)


@pytest.fixture(scope="session")
def cache():
    # process-wide cache: families and L-polynomials are computed once per run
    return shared_cache()
