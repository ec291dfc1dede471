import numpy as np
import pytest

from kenmotsu.catalog import example2, example3, kenmotsu3, kenmotsu7
from kenmotsu.contact import example_ken
from kenmotsu.geometry import sample_points
from kenmotsu.oneill import ONeillContext

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ken():
    return example_ken()


@pytest.fixture(scope="session")
def ex2():
    return example2()


@pytest.fixture(scope="session")
def ex3():
    return example3()


@pytest.fixture(scope="session")
def pts5(ken):
    return sample_points(ken.manifold, 25, seed=7)


@pytest.fixture(scope="session")
def ctx2(ex2, pts5):
    return ONeillContext.build(ex2.map, pts5, ex2.structure)


@pytest.fixture(scope="session")
def ken7():
    return kenmotsu7()


@pytest.fixture(scope="session")
def ken3():
    return kenmotsu3()


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
