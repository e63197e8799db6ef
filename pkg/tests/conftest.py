import pytest

from usoq.orientation import example_uso
from usoq.verifier import enumerate_usos

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def usos3():
    return list(enumerate_usos(3))


@pytest.fixture(scope="session")
def usos2():
    return list(enumerate_usos(2))


@pytest.fixture
def example():
    return example_uso()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
