import pytest

from tests import graphs


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="also run the full-size corpora and timing checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size corpus or timing check")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def c3():
    return graphs.cycle(3)


@pytest.fixture
def c4():
    return graphs.cycle(4)


@pytest.fixture
def c5():
    return graphs.cycle(5)


@pytest.fixture
def c6():
    return graphs.cycle(6)


@pytest.fixture
def k4():
    return graphs.k4()


@pytest.fixture
def k23():
    return graphs.k23()


@pytest.fixture
def theta333():
    return graphs.theta(3, 3, 3)


@pytest.fixture
def two_c4():
    return graphs.two_c4()


@pytest.fixture
def star4():
    return graphs.star4()
