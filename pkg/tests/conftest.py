import pytest

from flagshift import ProductSpace, build_algebra


@pytest.fixture(scope="session")
def su2():
    return build_algebra("su", 2)


@pytest.fixture(scope="session")
def su3():
    return build_algebra("su", 3)


@pytest.fixture(scope="session")
def su2n3(su2):
    return ProductSpace(su2, 3)


@pytest.fixture(scope="session")
def su2n4(su2):
    return ProductSpace(su2, 4)


@pytest.fixture(scope="session")
def su3n3(su3):
    return ProductSpace(su3, 3)


@pytest.fixture(scope="session")
def spaces(su2n3, su2n4, su3n3):
    return (su2n3, su2n4, su3n3)
