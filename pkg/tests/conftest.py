import functools

import pytest

from smoothfano.catalog import load_bundled
from smoothfano.classes import build_graph


@functools.lru_cache(maxsize=None)
def catalog(n):
    return load_bundled(n)


@functools.lru_cache(maxsize=None)
def graph(n, relation):
    return build_graph(catalog(n), relation)


@pytest.fixture(scope="session")
def cat():
    return catalog


@pytest.fixture(scope="session")
def graphs():
    return graph
