import sys
from fractions import Fraction

import pytest

from reflex.dataset import dataset_names, load_dataset, load_table1


@pytest.fixture(scope="session")
def datasets():
    return {name: load_dataset(name) for name in dataset_names()}


@pytest.fixture(scope="session")
def ds_a(datasets):
    return datasets["appendix_a"]


@pytest.fixture(scope="session")
def ds_b(datasets):
    return datasets["appendix_b"]


@pytest.fixture(scope="session")
def table1():
    return load_table1()


@pytest.fixture(scope="session")
def groups(datasets):
    return {name: ds.group for name, ds in datasets.items()}


def vec(*xs):
    return [Fraction(x) for x in xs]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
