from importlib import resources

import pytest

from helpers import VERDICTS
from sovnet.cutsets import build_catalog
from sovnet.strategies import load_assignment
from sovnet.topology import Flow, Topology, load_bundled


@pytest.fixture(scope="session")
def dcn():
    return load_bundled("fig1-dcn")


@pytest.fixture(scope="session")
def dcn_flow():
    return Flow("T_0", "T_1")


@pytest.fixture(scope="session")
def dcn_coloring(dcn):
    text = resources.files("sovnet.data").joinpath("fig1-coloring.csv").read_text("utf-8")
    return load_assignment(text, dcn, 4)


@pytest.fixture(scope="session")
def polska():
    return load_bundled("polska")


@pytest.fixture(scope="session")
def polska_catalog(polska):
    return build_catalog(polska)


@pytest.fixture
def triangle():
    return Topology("abc", [("a", "b"), ("b", "c"), ("c", "a")])



def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance")
        for n in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[n])
