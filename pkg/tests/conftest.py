import pathlib

import pytest

from gammaring.enumeration import default_corpus, load_example

DATA = pathlib.Path(__file__).resolve().parents[1] / "src" / "gammaring" / "data"
FIXTURES = pathlib.Path(__file__).resolve().parent / "fixtures"


@pytest.fixture(scope="session")
def B():
    return load_example("B")


@pytest.fixture(scope="session")
def Z2():
    return load_example("Z2")


@pytest.fixture(scope="session")
def trivial():
    return load_example("trivial")


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance(request):
    """Log one ``CRITERION n PASS|FAIL detail`` line for the acceptance summary."""
    def log(number, ok, detail):
        line = f"CRITERION {number} {'PASS' if ok else 'FAIL'} {detail}"
        request.config.stash[_ACCEPTANCE].append(line)
        print(line)
    return log


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
