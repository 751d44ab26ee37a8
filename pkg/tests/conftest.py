import pytest

from braidcoh.algebra import jordan, super_jordan
from braidcoh.resolutions import builtin_jordan, builtin_super_jordan


@pytest.fixture(scope="session")
def jp():
    return jordan()


@pytest.fixture(scope="session")
def sjp():
    return super_jordan()


@pytest.fixture(scope="session")
def jordan_res():
    return builtin_jordan()


@pytest.fixture(scope="session")
def super_res():
    return builtin_super_jordan(6)
