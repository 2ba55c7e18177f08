import pytest

from tdom import load_canonical


@pytest.fixture(scope="session")
def canonical():
    return load_canonical()
