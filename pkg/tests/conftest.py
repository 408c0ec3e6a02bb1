"""Shared fixtures: named semigroups and an isolated user data directory"""

import pytest

from core import library
from core.power import Subset
from core.resource_manager import ResourceManager


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False,
                     help="run the exhaustive order-4 catalog")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip_long = pytest.mark.skip(reason="needs --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip_long)


@pytest.fixture
def trivial():
    return library.trivial_semigroup()


@pytest.fixture
def l2():
    return library.left_zero(2)


@pytest.fixture
def n2():
    return library.null_semigroup(2)


@pytest.fixture
def c2():
    return library.cyclic_group(2)


@pytest.fixture
def c3():
    return library.cyclic_group(3)


@pytest.fixture
def c2xc2():
    return library.klein_four()


@pytest.fixture
def t2():
    return library.full_transformation_monoid(2)


@pytest.fixture
def b2():
    return library.brandt_b2()


@pytest.fixture
def sub():
    """sub(S, 'c1', 'c2') -> Subset of the labelled elements"""
    def make(S, *labels):
        return Subset.of(S.labels.index(label) for label in labels)
    return make


@pytest.fixture
def isolated_home(tmp_path, monkeypatch):
    """Point the user data directory at a temp dir for the duration of a test"""
    home = tmp_path / "home"
    monkeypatch.setenv("ERPOINTLIKES_HOME", str(home))
    ResourceManager.reset()
    yield home
    ResourceManager.reset()


NAMED_KEYS = sorted(library.NAMED)
