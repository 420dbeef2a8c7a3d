import functools

import pytest

from bext.galois import witnesses
from bext.harness.catalog import builtin
from bext.roots import LiftConfig


@functools.lru_cache(maxsize=None)
def catalog_tower(name):
    return builtin(name).build()[0]


@functools.lru_cache(maxsize=None)
def catalog_witnesses(name):
    return witnesses(catalog_tower(name), LiftConfig())


@pytest.fixture
def tower():
    return catalog_tower


@pytest.fixture
def wit():
    return catalog_witnesses


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
