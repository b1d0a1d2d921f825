"""Shared fixtures and the acceptance summary printer."""
import pytest

from linkpres import corpus

ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def items():
    return corpus.corpus_items()


@pytest.fixture
def trivial():
    return corpus.make_trivial(1)


@pytest.fixture
def g00():
    return corpus.make_goeritz(0, 0)


@pytest.fixture
def trefoil():
    return corpus.make_trefoil()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[number])
