import sys

import pytest

from audioactive.spectral import decay_matrix
from audioactive.table import derive_common_elements


@pytest.fixture(scope="session")
def table():
    return derive_common_elements("1")


@pytest.fixture(scope="session")
def matrix(table):
    return decay_matrix(table)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
