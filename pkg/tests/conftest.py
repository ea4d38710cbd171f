import pytest

from revdickson.fieldcore import find_irreducible

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def gf():
    """Cached field lookup: gf(p, e)."""
    cache = {}

    def get(p, e=1):
        if (p, e) not in cache:
            cache[(p, e)] = find_irreducible(p, e)
        return cache[(p, e)]

    return get


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
